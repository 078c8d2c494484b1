"""High precision special functions on the positive real axis.

Zeta values use Euler-Maclaurin summation; gamma and digamma shift the
argument upward with the functional equation and then apply the Stirling
asymptotic series.  All results are computed at ``ctx.dps`` digits.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import NamedTuple

import mpmath as mp

from .context import DEFAULT_CONTEXT, EvaluationContext, PrecisionUnreachable

__all__ = [
    "Constants",
    "constants",
    "zeta",
    "hurwitz_zeta",
    "gamma",
    "log_gamma",
    "digamma",
    "trigamma_at_integer",
    "nielsen_beta",
    "bernoulli",
    "to_real",
]


_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (with B_1 = -1/2)."""
    if m >= len(_bernoulli_cache):
        with _bernoulli_lock:
            for j in range(len(_bernoulli_cache), m + 1):
                acc = Fraction(0)
                for i in range(j):
                    acc += math.comb(j + 1, i) * _bernoulli_cache[i]
                _bernoulli_cache.append(-acc / (j + 1))
    return _bernoulli_cache[m]


def to_real(x) -> mp.mpf:
    """Convert int, Fraction, str or mpf to an mpf at the current precision."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


class Constants(NamedTuple):
    pi: mp.mpf
    e: mp.mpf
    euler: mp.mpf
    ln2: mp.mpf
    sqrt2: mp.mpf


def constants(ctx: EvaluationContext = DEFAULT_CONTEXT) -> Constants:
    with ctx.workdps():
        return Constants(+mp.pi, +mp.e, +mp.euler, +mp.ln2, mp.sqrt(2))


def _shift_threshold(dps: int) -> int:
    # the Stirling series' smallest term is about exp(-2 pi z)
    return int(0.4 * dps) + 10


def _em_tail(s: int, x0: mp.mpf, dps: int, budget: int) -> tuple[mp.mpf, int]:
    """Euler-Maclaurin estimate of sum_{m>=0} (x0+m)^-s; returns (value, terms)."""
    eps = mp.mpf(10) ** (-dps)
    total = x0 ** (1 - s) / (s - 1) + x0 ** (-s) / 2
    rising = mp.mpf(s)  # s (s+1) ... (s+2j-2)
    power = x0 ** (-s - 1)
    j = 1
    while True:
        term = to_real(bernoulli(2 * j)) / math.factorial(2 * j) * rising * power
        total += term
        if abs(term) < eps * abs(total):
            return total, j
        j += 1
        if j > budget:
            raise PrecisionUnreachable(
                f"Euler-Maclaurin tail did not reach {dps} digits in {budget} terms"
            )
        rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
        power /= x0 * x0


def hurwitz_zeta(s: int, a, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """zeta(s, a) = sum_{m>=0} (m+a)^-s for integer s >= 2 and a > 0."""
    if int(s) != s or s < 2:
        raise ValueError("s must be an integer >= 2")
    s = int(s)
    with ctx.workdps():
        a = to_real(a)
        if a <= 0:
            raise ValueError("a must be positive")
        dps = ctx.dps + 5
        with mp.workdps(dps):
            n_direct = _shift_threshold(dps) + s
            if n_direct >= ctx.max_terms:
                raise PrecisionUnreachable(
                    f"{ctx.target_digits} digits need about {n_direct} terms, "
                    f"max_terms={ctx.max_terms}"
                )
            head = mp.fsum((a + m) ** (-s) for m in range(n_direct))
            tail, _ = _em_tail(s, a + n_direct, dps, ctx.max_terms - n_direct)
            value = head + tail
        return +value


def zeta(s: int, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """Riemann zeta at an integer s >= 2."""
    return hurwitz_zeta(s, 1, ctx)


def _stirling_log_gamma(z: mp.mpf, dps: int) -> mp.mpf:
    eps = mp.mpf(10) ** (-dps)
    total = (z - mp.mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
    zsq = z * z
    power = 1 / z
    j = 1
    while True:
        term = to_real(bernoulli(2 * j)) / (2 * j * (2 * j - 1)) * power
        total += term
        if abs(term) < eps * max(1, abs(total)):
            return total
        j += 1
        power /= zsq


def log_gamma(x, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """ln Gamma(x) for real x > 0."""
    with ctx.workdps():
        x = to_real(x)
        if x <= 0:
            raise ValueError("log_gamma requires x > 0")
        dps = ctx.dps + 5
        with mp.workdps(dps):
            z0 = _shift_threshold(dps)
            shift = max(0, int(mp.ceil(z0 - x)))
            if shift > ctx.max_terms:
                raise PrecisionUnreachable("argument shift exceeds max_terms")
            product = mp.mpf(1)
            for i in range(shift):
                product *= x + i
            value = _stirling_log_gamma(x + shift, dps) - mp.log(product)
        return +value


def gamma(x, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """Gamma(x) for real x > 0."""
    with ctx.workdps():
        x = to_real(x)
        if x <= 0:
            raise ValueError("gamma requires x > 0")
        with mp.workdps(ctx.dps + 10):
            value = mp.exp(log_gamma(x, ctx.with_(guard_digits=ctx.guard_digits + 10)))
        return +value


def digamma(x, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """psi(x) = d/dx ln Gamma(x) for real x > 0."""
    with ctx.workdps():
        x = to_real(x)
        if x <= 0:
            raise ValueError("digamma requires x > 0")
        dps = ctx.dps + 5
        with mp.workdps(dps):
            eps = mp.mpf(10) ** (-dps)
            z0 = _shift_threshold(dps)
            shift = max(0, int(mp.ceil(z0 - x)))
            if shift > ctx.max_terms:
                raise PrecisionUnreachable("argument shift exceeds max_terms")
            correction = mp.fsum(1 / (x + i) for i in range(shift))
            z = x + shift
            total = mp.log(z) - 1 / (2 * z)
            zsq = z * z
            power = 1 / zsq
            j = 1
            while True:
                term = to_real(bernoulli(2 * j)) / (2 * j) * power
                total -= term
                if abs(term) < eps * max(1, abs(total)):
                    break
                j += 1
                power /= zsq
            value = total - correction
        return +value


def trigamma_at_integer(n: int, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """psi'(n) = pi^2/6 - (1 + 1/2^2 + ... + 1/(n-1)^2) for integer n >= 1."""
    if int(n) != n or n < 1:
        raise ValueError("n must be an integer >= 1")
    n = int(n)
    # the subtraction loses about 2 log10(n) digits
    extra = 2 * len(str(n)) + 2
    with ctx.workdps():
        with mp.workdps(ctx.dps + extra):
            if n <= 256:
                correction = sum((Fraction(1, j * j) for j in range(1, n)), Fraction(0))
                value = mp.pi**2 / 6 - to_real(correction)
            else:
                value = mp.pi**2 / 6 - mp.fsum(mp.mpf(1) / (j * j) for j in range(1, n))
        return +value


def nielsen_beta(x, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """Nielsen's beta function sum_{m>=0} (-1)^m/(m+x), x > 0.

    Evaluated as (psi((x+1)/2) - psi(x/2))/2.
    """
    with ctx.workdps():
        x = to_real(x)
        if x <= 0:
            raise ValueError("nielsen_beta requires x > 0")
        # psi differences of large arguments cancel about log10(x) digits
        extra = max(0, int(mp.log10(x))) + 2
        inner = ctx.with_(guard_digits=ctx.guard_digits + extra)
        with mp.workdps(inner.dps):
            value = (digamma((x + 1) / 2, inner) - digamma(x / 2, inner)) / 2
        return +value
