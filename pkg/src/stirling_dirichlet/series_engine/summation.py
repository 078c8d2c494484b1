"""Dirichlet-type sums and Stirling-weighted sums with tail estimates.

Both summers add an integrated model of the truncated tail to the partial
sum.  ``SumResult.value`` is that corrected value, ``partial_sum`` the raw
truncated sum, ``tail`` the model tail that was added, and
``tail_estimate`` the estimated error of ``value``.

Stirling-weighted sums use the scaled row s(n, j) = [n, j]/n!, which stays
in [0, 1] and obeys

    s(n+1, j) = (n s(n, j) + s(n, j-1)) / (n+1).

For the tail, n s(n, k) is modelled by a polynomial in ln(n/N) whose
derivative is the model of column k-1 and whose value at n = N is matched
to the computed row.  Its leading power is (ln n)^(k-1)/(k-1)!, the
Jordan-type growth of the column.  The weights are modelled locally as
w_N (N/n)^alpha with alpha read off the last two weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
import mpmath as mp

from .._mpfr import MPFR, mpfr, precision, to_mpf, to_mpfr
from ..context import DEFAULT_CONTEXT, EvaluationContext
from .streams import CoefficientStream

__all__ = [
    "SumResult",
    "ScaledStirlingRow",
    "sum_dirichlet",
    "sum_stirling_weighted",
]

_INF = mpfr("inf")


@dataclass(frozen=True)
class SumResult:
    value: mp.mpf
    terms_used: int
    tail_estimate: mp.mpf
    converged: bool
    partial_sum: mp.mpf
    tail: mp.mpf

    def scaled(self, factor, offset=0) -> "SumResult":
        """Affine image ``offset + factor * self`` (factor, offset exact or mpf)."""
        factor = mp.mpf(factor) if not isinstance(factor, mp.mpf) else factor
        offset = mp.mpf(offset) if not isinstance(offset, mp.mpf) else offset
        return SumResult(
            offset + factor * self.value,
            self.terms_used,
            abs(factor) * self.tail_estimate,
            self.converged,
            offset + factor * self.partial_sum,
            factor * self.tail,
        )


class ScaledStirlingRow:
    """Row n of s(n, j) = [n, j]/n! for j = 0..k_max, at a fixed bit precision."""

    def __init__(self, k_max: int, bits: int = 160):
        if k_max < 0:
            raise ValueError("k_max must be >= 0")
        self.k_max = k_max
        self.bits = bits
        self.n = 0
        with precision(bits):
            self._s = [mpfr(1)] + [mpfr(0)] * k_max

    def advance(self) -> None:
        n = self.n
        s = self._s
        with precision(self.bits):
            m = n + 1
            for j in range(self.k_max, 0, -1):
                s[j] = (n * s[j] + s[j - 1]) / m
            s[0] = mpfr(0)
        self.n = n + 1

    def advance_to(self, n: int) -> None:
        if n < self.n:
            raise ValueError("rows only move forward")
        while self.n < n:
            self.advance()

    def raw(self) -> list:
        return self._s

    def values(self) -> list[mp.mpf]:
        return [to_mpf(v) for v in self._s]

    def __getitem__(self, j: int) -> mp.mpf:
        return to_mpf(self._s[j])


def _poly_exp_integral(coeffs, alpha, v0):
    """int_{v0}^inf sum_m coeffs[m] v^m exp(-alpha v) dv."""
    total = mpfr(0)
    for m, q in enumerate(coeffs):
        if not q:
            continue
        inner = mpfr(0)
        for i in range(m + 1):
            inner += mpfr(math.factorial(m) // math.factorial(i)) * v0**i / alpha ** (m - i + 1)
        total += q * inner
    return total * gmpy2.exp(-alpha * v0)


def _local_exponent(prev, last, n_prev, n_last):
    """alpha with last/prev = (n_last/n_prev)^-alpha, or None when undefined."""
    if not prev or not last or (prev > 0) != (last > 0):
        return None
    return gmpy2.log(prev / last) / gmpy2.log(mpfr(n_last) / n_prev)


def _stirling_tail(row, k, n_last, w_prev, w_last, decay):
    """Model tail sum_{n > N} s(n,k) w_n and its uncertainty."""
    if k == 0:
        return mpfr(0), mpfr(0)
    c = [n_last * v for v in row]
    polys = [[mpfr(0)]]
    for j in range(1, k + 1):
        prev = polys[j - 1]
        polys.append([c[j]] + [prev[m] / (m + 1) for m in range(len(prev))])
    if not w_last:
        if not w_prev:
            return mpfr(0), mpfr(0)
        return _INF, _INF
    alpha = _local_exponent(w_prev, w_last, n_last - 1, n_last)
    if alpha is None and decay.kind == "power" and decay.exponent > 0:
        alpha = mpfr(decay.exponent)
    if alpha is None or alpha <= 0:
        return _INF, _INF
    v0 = gmpy2.log1p(mpfr(1) / (2 * n_last))
    tail = w_last * _poly_exp_integral(polys[k], alpha, v0)
    unc = abs(tail) * 2 * (1 + gmpy2.log(mpfr(n_last))) / n_last
    return tail, unc


def _dirichlet_tail(t_prev, t_last, count, decay):
    """Model tail of sum_{p >= count} t_p given t_{count-2}, t_{count-1}."""
    if not t_last and not t_prev:
        return mpfr(0), mpfr(0)
    if decay.kind == "fast":
        if not t_prev:
            return mpfr(0), abs(t_last)
        r = abs(t_last / t_prev)
        if r >= 1:
            return _INF, _INF
        return mpfr(0), abs(t_last) * r / (1 - r)
    big_p = mpfr(count)  # t_last sits at p + 1 = count
    beta = _local_exponent(t_prev, t_last, count - 1, count)
    if beta is None:
        if t_prev and t_last and (t_prev > 0) != (t_last > 0):
            return mpfr(0), abs(t_last)
        return _INF, _INF
    if beta <= 1:
        return _INF, _INF
    start = big_p + mpfr(1) / 2
    tail = t_last * big_p**beta * start ** (1 - beta) / (beta - 1)
    log_p = gmpy2.log(big_p)
    unc = abs(tail) * 2 * (1 + log_p) / big_p
    if decay.log_power:
        unc += abs(tail) * (abs(decay.log_power) + 1) / log_p**2
    return tail, unc


def _resolve_tol(tol, ctx):
    return ctx.eps if tol is None else mp.mpf(tol)


def _finish(partial, tail, unc, terms, tol, bits):
    with precision(bits):
        value = partial + tail
        rounding = abs(partial) * terms * gmpy2.mul_2exp(mpfr(1), -(bits - 8))
        unc = unc + rounding
        scale = abs(value) if value else mpfr(1)
        converged = bool(gmpy2.is_finite(unc)) and unc <= to_mpfr(tol) * scale
        return SumResult(to_mpf(value), terms, to_mpf(unc), converged,
                         to_mpf(partial), to_mpf(tail) if gmpy2.is_finite(tail) else mp.inf)


def sum_dirichlet(a: CoefficientStream, k: int, ctx: EvaluationContext = DEFAULT_CONTEXT,
                  tol=None, min_terms: int = 64) -> SumResult:
    """sum_{p>=0} a_p / (p+1)^(k+1).

    Sums until the estimated error of the tail-corrected value falls below
    ``tol`` (relative; default 10**-target_digits) or ``ctx.max_terms``
    terms have been used.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    tol = _resolve_tol(tol, ctx)
    bits = ctx.bits
    power = k + 1
    with ctx.workdps(), precision(bits):
        tol_r = to_mpfr(tol)
        # factorially decaying terms are cheap: run them down to working precision
        negligible = gmpy2.mul_2exp(mpfr(1), -bits)
        total = mpfr(0)
        t_prev = t_last = mpfr(0)
        count = 0
        quiet = 0
        exhausted = True
        for p, raw in enumerate(a.iterate(0)):
            if count >= ctx.max_terms:
                break
            term = (raw if type(raw) is MPFR else to_mpfr(raw)) / (p + 1) ** power
            total += term
            t_prev, t_last = t_last, term
            count += 1
            if a.decay.kind == "fast":
                quiet = quiet + 1 if abs(term) <= negligible * abs(total) else 0
                if quiet >= 3:
                    break
            elif count >= min_terms and count % 256 == 0:
                tail, unc = _dirichlet_tail(t_prev, t_last, count, a.decay)
                if gmpy2.is_finite(unc) and unc <= tol_r * abs(total + tail) * mpfr("0.5"):
                    break
        else:
            exhausted = False
        if not exhausted or a.decay.kind == "finite":
            return _finish(total, mpfr(0), mpfr(0), count, tol, bits)
        if count < 2:
            tail, unc = (mpfr(0), abs(t_last)) if a.decay.kind == "fast" else (_INF, _INF)
        else:
            tail, unc = _dirichlet_tail(t_prev, t_last, count, a.decay)
        return _finish(total, tail, unc, count, tol, bits)


def sum_stirling_weighted(b: CoefficientStream, k: int, ctx: EvaluationContext = DEFAULT_CONTEXT,
                          tol=None, min_terms: int | None = None) -> SumResult:
    """sum_{n>=k} [n, k] b_n, with the stream supplying w_n = n! b_n.

    The big integers [n, k] are never formed; the scaled row s(n, k) is
    advanced in floating point instead.  Stops on convergence (see
    ``sum_dirichlet``) or after ``ctx.max_terms`` terms.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    tol = _resolve_tol(tol, ctx)
    bits = ctx.bits
    if min_terms is None:
        min_terms = max(64, 16 * (k + 1))
    with ctx.workdps(), precision(bits):
        tol_r = to_mpfr(tol)
        weights = b.iterate(k)
        if k == 0:
            # s(n, 0) = 0 for n >= 1: only the n = 0 term survives
            w0 = to_mpfr(next(weights))
            return _finish(w0, mpfr(0), mpfr(0), 1, tol, bits)
        row = ScaledStirlingRow(k, bits)
        row.advance_to(k)
        s = row.raw()
        total = mpfr(0)
        w_prev = w_last = mpfr(0)
        n = k
        count = 0
        for raw in weights:
            w = raw if type(raw) is MPFR else to_mpfr(raw)
            total += s[k] * w
            w_prev, w_last = w_last, w
            count += 1
            if count >= ctx.max_terms:
                break
            if count >= min_terms and count % 256 == 0:
                tail, unc = _stirling_tail(s, k, n, w_prev, w_last, b.decay)
                if gmpy2.is_finite(unc) and unc <= tol_r * abs(total + tail) * mpfr("0.5"):
                    break
            # advance the row to n + 1 in place
            m = n + 1
            for j in range(k, 0, -1):
                s[j] = (n * s[j] + s[j - 1]) / m
            s[0] = mpfr(0)
            n = m
        else:
            return _finish(total, mpfr(0), mpfr(0), count, tol, bits)
        if count < 2:
            tail, unc = _INF, _INF
        else:
            tail, unc = _stirling_tail(s, k, n, w_prev, w_last, b.decay)
        return _finish(total, tail, unc, count, tol, bits)
