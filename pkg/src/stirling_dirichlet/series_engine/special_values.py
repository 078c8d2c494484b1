"""Exponential tails, the even-central-binomial moments A_n, and
reconstruction of numbers of the form a - b*sqrt(2)."""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp

from ..context import DEFAULT_CONTEXT, EvaluationContext
from .quadrature import integrate_weighted

__all__ = [
    "exp_tail",
    "scaled_exp_tail",
    "even_central_gf",
    "a_even_integral",
    "sqrt2_reconstruct",
]


def scaled_exp_tail(n: int, sign: int, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """u(n) = sum_{i>=1} sign^(i-1) / ((n+1)(n+2)...(n+i)).

    This is n! * (e^sign - sum_{j<=n} sign^j/j!) / sign^(n+1); it is positive and
    at most e - 1 for both signs, so no cancellation happens.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    with ctx.workdps():
        eps = mp.mpf(10) ** (-ctx.dps - 2)
        total = mp.mpf(0)
        term = mp.mpf(1)
        i = 1
        while True:
            term /= n + i
            total += term if (i % 2 or sign == 1) else -term
            if term < eps * total:
                break
            i += 1
        return total


def exp_tail(n: int, sign: int, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """e^sign - sum_{j=0}^{n} sign^j / j!, summed forward from j = n+1."""
    u = scaled_exp_tail(n, sign, ctx)
    with ctx.workdps():
        value = u / math.factorial(n)
        return -value if (sign == -1 and n % 2 == 0) else value


def even_central_gf(x, y):
    """sum_p C(4p, 2p) x^p / 16^p = (1/sqrt(1-sqrt x) + 1/sqrt(1+sqrt x))/2.

    1 - sqrt(x) is formed as y/(1 + sqrt(x)) so the singular end stays exact.
    """
    r = mp.sqrt(x)
    return (1 / mp.sqrt(y / (1 + r)) + 1 / mp.sqrt(1 + r)) / 2


def a_even_integral(n: int, ctx: EvaluationContext = DEFAULT_CONTEXT, error: bool = False):
    """A_n = (1/2) int_0^1 (sqrt(1-sqrt x) + sqrt(1+sqrt x)) (1-x)^(n-1/2) dx.

    Evaluated as int_0^1 f(x) (1-x)^n dx with f the generating function of
    C(4p, 2p)/16^p, which is the same integrand written as
    (sqrt(1-sqrt x) + sqrt(1+sqrt x)) / (2 sqrt(1-x)).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return integrate_weighted(even_central_gf, n, ctx, error=error)


def _as_fraction(value: mp.mpf) -> Fraction:
    man, exp = mp.frexp(value)
    bits = mp.mp.prec + 4
    scaled = int(mp.nint(man * mp.mpf(2) ** bits))
    return Fraction(scaled) * Fraction(2) ** (exp - bits)


def sqrt2_reconstruct(v, max_denominator: int = 10**6,
                      ctx: EvaluationContext = DEFAULT_CONTEXT):
    """Rationals (a, b) with v ~ a - b*sqrt(2) and denominators <= max_denominator.

    Looks for an integer relation among (v, 1, sqrt 2) with PSLQ.  If none
    exists within the bound, falls back to the best rational approximation
    of v alone (b = 0).  Returns ``(a, b, residual)`` where residual is
    |v - (a - b sqrt 2)|; a poor fit shows up only in the residual.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    with ctx.workdps():
        v = mp.mpf(v)
        root2 = mp.sqrt(2)
        if v == 0:
            return Fraction(0), Fraction(0), mp.mpf(0)
        candidates = []
        bound = int(max_denominator * (abs(v) + 4))
        rel = mp.pslq([v, mp.mpf(1), root2], tol=mp.mpf(10) ** (-ctx.target_digits),
                      maxcoeff=bound, maxsteps=20_000)
        if rel is not None and rel[0] != 0:
            c0, c1, c2 = rel
            a, b = Fraction(-c1, c0), Fraction(c2, c0)
            if a.denominator <= max_denominator and b.denominator <= max_denominator:
                candidates.append((a, b))
        candidates.append((_as_fraction(v).limit_denominator(max_denominator), Fraction(0)))

        def residual(pair):
            a, b = pair
            return abs(v - (mp.mpf(a.numerator) / a.denominator
                            - mp.mpf(b.numerator) / b.denominator * root2))

        best = min(candidates, key=residual)
        return best[0], best[1], residual(best)
