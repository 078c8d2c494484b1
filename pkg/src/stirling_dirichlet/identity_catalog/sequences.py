"""Integrands, Dirichlet coefficient streams and Stirling weight streams.

Integrands take ``(x, y)`` with ``y = 1 - x`` (see the quadrature module).
Coefficient streams yield a_p for the Dirichlet side; weight streams
yield w_n = n! b_n for the Stirling side.  Streams that carry real values
run on gmpy2 at the precision set by the summation engine.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import count

import gmpy2
import mpmath as mp

from .._mpfr import mpfr, to_mpfr
from ..context import DEFAULT_CONTEXT, EvaluationContext
from ..series_engine import CoefficientStream, Decay, a_even_integral, even_central_gf, log_y
from ..special_functions import nielsen_beta, trigamma_at_integer

# ---------------------------------------------------------------- integrands


def geometric_gf(x, y):
    return 1 / y


def harmonic_next_gf(x, y):
    """sum H_{p+1} x^p = -ln(1-x) / (x(1-x))."""
    return -log_y(x, y) / (x * y)


def hyperharmonic_gf(r: int):
    """-ln(1-x) / (1-x)^(r+1)."""

    def f(x, y):
        return -log_y(x, y) / y ** (r + 1)

    return f


def log_power_gf(q: int):
    """(-1)^q/q! ln^q(1-x) = sum [p, q] x^p / p!."""
    fact = math.factorial(q)

    def f(x, y):
        return (-log_y(x, y)) ** q / fact

    return f


def cauchy_first_gf(x, y):
    """-x / ln(1-x) = sum (-1)^p c_p x^p / p!."""
    return -x / log_y(x, y)


def cauchy_second_gf(x, y):
    """-x / ((1-x) ln(1-x)) = sum d_p x^p / p!."""
    return -x / (y * log_y(x, y))


def derangement_gf(x, y):
    return mp.exp(-x) / y


def exp_neg_gf(x, y):
    return mp.exp(-x)


def exp_gf(x, y):
    return mp.exp(x)


def binomial_gf(r):
    """(1-x)^r for rational r."""
    if isinstance(r, Fraction) and r.denominator == 1:
        r_int = int(r)

        def f(x, y):
            return y**r_int

        return f
    exponent = mp.mpf(r.numerator) / r.denominator if isinstance(r, Fraction) else mp.mpf(r)

    def f(x, y):
        return y**exponent

    return f


def central_gf(x, y):
    """sum C(2p,p) x^p / 4^p = (1-x)^(-1/2)."""
    return 1 / mp.sqrt(y)


def central_minus_gf(x, y):
    """sum C(2p,p) x^p / (4^p (2p-1)) = -sqrt(1-x)."""
    return -mp.sqrt(y)


def catalan_shift_gf(x, y):
    """sum_{p>=1} C_{p-1} x^p / 4^p = (1 - sqrt(1-x))/2, written without cancellation."""
    return x / (2 * (1 + mp.sqrt(y)))


def catalan_gf(x, y):
    """sum C_p x^p / 4^p = 2 / (1 + sqrt(1-x))."""
    return 2 / (1 + mp.sqrt(y))


def unit_gf(x, y):
    return mp.mpf(1)


def beta_over_n_gf(x, y):
    """-t ln(1-t^2) / (1+t) at t = x; its integral is sum_{n>=1} beta(2n+2)/n."""
    log_1mt2 = mp.log1p(-x * x) if x < 0.5 else mp.log(y * (1 + x))
    return -x * log_1mt2 / (1 + x)


__all__ = [
    "geometric_gf",
    "harmonic_next_gf",
    "hyperharmonic_gf",
    "log_power_gf",
    "cauchy_first_gf",
    "cauchy_second_gf",
    "derangement_gf",
    "exp_neg_gf",
    "exp_gf",
    "binomial_gf",
    "central_gf",
    "central_minus_gf",
    "catalan_shift_gf",
    "catalan_gf",
    "even_central_gf",
    "unit_gf",
    "beta_over_n_gf",
]

# ------------------------------------------------------ Dirichlet coefficients


def ones() -> CoefficientStream:
    return CoefficientStream.constant(1, "ones")


def _ratio_stream(first_value, ratio, decay, name):
    """a_0 = first_value, a_{p+1} = a_p * ratio(p)."""

    def generate(start):
        a = to_mpfr(first_value)
        for p in range(start):
            a = a * ratio(p)
        for p in count(start):
            yield a
            a = a * ratio(p)

    return CoefficientStream(generate, decay, name)


def catalan_quarter() -> CoefficientStream:
    """C_p / 4^p."""
    return _ratio_stream(1, lambda p: mpfr(2 * p + 1) / (2 * p + 4), Decay("power", 1.5), "catalan/4^p")


def central_quarter() -> CoefficientStream:
    """C(2p, p) / 4^p."""
    return _ratio_stream(1, lambda p: mpfr(2 * p + 1) / (2 * p + 2), Decay("power", 0.5), "C(2p,p)/4^p")


def even_central_sixteenth() -> CoefficientStream:
    """C(4p, 2p) / 16^p."""
    return _ratio_stream(
        1, lambda p: mpfr((4 * p + 1) * (4 * p + 3)) / (4 * (2 * p + 1) * (2 * p + 2)),
        Decay("power", 0.5), "C(4p,2p)/16^p",
    )


def inverse_factorial(sign: int = 1) -> CoefficientStream:
    """sign^p / p!."""
    return _ratio_stream(1, lambda p: mpfr(sign) / (p + 1), Decay("fast"), "sign^p/p!")


def derangement_scaled() -> CoefficientStream:
    """D_p / p! = sum_{j<=p} (-1)^j / j!."""

    def generate(start):
        total = mpfr(0)
        inv = mpfr(1)
        for j in count(0):
            total = total + inv if j % 2 == 0 else total - inv
            if j >= start:
                yield total
            inv = inv / (j + 1)

    return CoefficientStream(generate, Decay("power", 0.0), "D_p/p!")


def harmonic_next() -> CoefficientStream:
    """H_{p+1}."""

    def generate(start):
        h = mpfr(0)
        for j in range(1, start + 1):
            h += mpfr(1) / j
        for p in count(start):
            h = h + mpfr(1) / (p + 1)
            yield h

    return CoefficientStream(generate, Decay("power", 0.0, log_power=1), "H_{p+1}")


def harmonic_prev_over_p() -> CoefficientStream:
    """H_{p-1} / p for p >= 1, and 0 at p = 0."""

    def generate(start):
        h = mpfr(0)  # H_{p-1}
        for j in range(1, start):
            h += mpfr(1) / j
        for p in count(start):
            if p == 0:
                yield mpfr(0)
                continue
            yield h / p
            h = h + mpfr(1) / p

    return CoefficientStream(generate, Decay("power", 1.0, log_power=1), "H_{p-1}/p")


def inverse_linear_coefficients(a: int, b: int) -> CoefficientStream:
    """1 / (a p + b)."""

    def generate(start):
        for p in count(start):
            yield mpfr(1) / (a * p + b)

    return CoefficientStream(generate, Decay("power", 1.0), f"1/({a}p+{b})")


# ------------------------------------------------------------ Stirling weights


def inverse_power(q: int, shift: int = 0) -> CoefficientStream:
    """w_n = 1 / (n + shift)^q."""

    def generate(start):
        for n in count(start):
            yield mpfr(1) / mpfr(n + shift) ** q

    return CoefficientStream(generate, Decay("power", float(q)), f"1/(n+{shift})^{q}",
                             first=max(0, 1 - shift))


def inverse_linear(a: int, b) -> CoefficientStream:
    """w_n = 1 / (a n + b) for rational ``b``."""
    b = Fraction(b)

    def generate(start):
        bb = to_mpfr(b)
        for n in count(start):
            yield 1 / (a * n + bb)

    first = 0
    while a * first + b <= 0:
        first += 1
    return CoefficientStream(generate, Decay("power", 1.0), f"1/({a}n+{b})", first=first)


def log_ratio(shift: int) -> CoefficientStream:
    """w_n = ln(1 + 1/(n + shift))."""

    def generate(start):
        for n in count(start):
            yield gmpy2.log1p(mpfr(1) / (n + shift))

    return CoefficientStream(generate, Decay("power", 1.0), f"ln(1+1/(n+{shift}))",
                             first=max(0, 1 - shift))


def _function_ctx(ctx: EvaluationContext) -> EvaluationContext:
    # extra guard digits for the seed value; max_terms budgets the series, not this
    return ctx.refined(5).with_(max_terms=max(ctx.max_terms, DEFAULT_CONTEXT.max_terms))


def trigamma_weights(ctx: EvaluationContext = DEFAULT_CONTEXT) -> CoefficientStream:
    """w_n = psi'(n) via psi'(n+1) = psi'(n) - 1/n^2."""

    def generate(start):
        psi1 = to_mpfr(trigamma_at_integer(start, _function_ctx(ctx)))
        for n in count(start):
            yield psi1
            psi1 = psi1 - mpfr(1) / (mpfr(n) * n)

    return CoefficientStream(generate, Decay("power", 1.0), "psi'(n)", first=1)


def hurwitz_weights(a, ctx: EvaluationContext = DEFAULT_CONTEXT) -> CoefficientStream:
    """w_n = n! Gamma(a) / (n Gamma(n+a)), a product that never forms Gamma."""
    a = Fraction(a)

    def generate(start):
        aa = to_mpfr(a)
        prod = mpfr(1)  # prod_{i<n} (i+1)/(i+a)
        for i in range(start):
            prod = prod * (i + 1) / (i + aa)
        for n in count(start):
            yield prod / n
            prod = prod * (n + 1) / (n + aa)

    return CoefficientStream(generate, Decay("power", float(a)), f"hurwitz({a})", first=1)


def beta_even_weights(ctx: EvaluationContext = DEFAULT_CONTEXT) -> CoefficientStream:
    """w_n = beta(2n+2) via beta(x+2) = beta(x) - 1/x + 1/(x+1)."""

    def generate(start):
        beta = to_mpfr(nielsen_beta(2 * start + 2, _function_ctx(ctx)))
        for n in count(start):
            yield beta
            x = 2 * n + 2
            beta = beta - mpfr(1) / x + mpfr(1) / (x + 1)

    return CoefficientStream(generate, Decay("power", 1.0), "beta(2n+2)")


_EXP_BLOCK = 256


def _scaled_exp_tail_mpfr(n: int, sign: int):
    """sum_{i>=1} sign^(i-1) / ((n+1)...(n+i)) at the active gmpy2 precision."""
    eps = gmpy2.mul_2exp(mpfr(1), -gmpy2.get_context().precision - 4)
    total = mpfr(0)
    term = mpfr(1)
    i = 1
    while True:
        term = term / (n + i)
        total = total + term if (sign == 1 or i % 2) else total - term
        if term < eps * total:
            return total
        i += 1


def exp_tail_weights(sign: int, shift: int = 0) -> CoefficientStream:
    """w_n = u(n - shift) with u(m) = m! (e^sign - sum_{j<=m} sign^j/j!) / sign^(m+1).

    u is filled in fixed blocks by the backward recurrence
    u(m) = (1 + sign u(m+1)) / (m+1), which damps rounding errors; each
    block top is summed directly.  Block boundaries do not depend on the
    starting index, so a given n always yields the same value.
    """

    def generate(start):
        m = start - shift
        while True:
            block = m // _EXP_BLOCK
            top = (block + 1) * _EXP_BLOCK
            values = [None] * _EXP_BLOCK
            u = _scaled_exp_tail_mpfr(top, sign)
            for j in range(top - 1, block * _EXP_BLOCK - 1, -1):
                u = (1 + sign * u) / (j + 1)
                values[j - block * _EXP_BLOCK] = u
            for j in range(m, top):
                yield values[j - block * _EXP_BLOCK]
            m = top

    name = "e-tail" if sign == 1 else "1/e-tail"
    return CoefficientStream(generate, Decay("power", 1.0), name, first=shift)


_A_QUAD_LIMIT = 16


def _a_even_series(n: int, coeffs: list):
    """A_n = sum_p a_p p! n! / (p+n+1)! with a_p = C(4p,2p)/16^p, for n >= 16."""
    eps = gmpy2.mul_2exp(mpfr(1), -gmpy2.get_context().precision - 4)
    c = mpfr(1) / (n + 1)
    total = mpfr(0)
    p = 0
    while True:
        if p >= len(coeffs):
            last = coeffs[-1]
            q = len(coeffs) - 1
            coeffs.append(last * mpfr((4 * q + 1) * (4 * q + 3)) / (4 * (2 * q + 1) * (2 * q + 2)))
        term = coeffs[p] * c
        total += term
        r = mpfr(p + 1) / (n + p + 2)
        if term * r < eps * total * (1 - r):
            return total
        c = c * (p + 1) / (n + p + 2)
        p += 1


def a_even_weights(ctx: EvaluationContext = DEFAULT_CONTEXT) -> CoefficientStream:
    """w_n = A_n: quadrature below n = 16, the beta-function series above."""

    def generate(start):
        coeffs = [mpfr(1)]
        for n in count(start):
            if n < _A_QUAD_LIMIT:
                yield to_mpfr(a_even_integral(n, _function_ctx(ctx)))
            else:
                yield _a_even_series(n, coeffs)

    return CoefficientStream(generate, Decay("power", 0.5), "A_n")


def a_even_series_value(n: int, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """A_n from the series route alone; slow below n = 16, used as a cross-check."""
    from .._mpfr import precision, to_mpf

    with precision(ctx.bits + 16):
        return to_mpf(_a_even_series(n, [mpfr(1)]))


__all__ += [
    "ones",
    "catalan_quarter",
    "central_quarter",
    "even_central_sixteenth",
    "inverse_factorial",
    "derangement_scaled",
    "harmonic_next",
    "harmonic_prev_over_p",
    "inverse_linear_coefficients",
    "inverse_power",
    "inverse_linear",
    "log_ratio",
    "trigamma_weights",
    "hurwitz_weights",
    "beta_even_weights",
    "exp_tail_weights",
    "a_even_weights",
    "a_even_series_value",
]
