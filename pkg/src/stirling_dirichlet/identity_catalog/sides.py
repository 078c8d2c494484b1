"""One evaluated side of an identity, with its error estimate and provenance."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from ..context import EvaluationContext
from ..series_engine import (
    CoefficientStream,
    SumResult,
    integrate_log_kernel,
    sum_dirichlet,
    sum_stirling_weighted,
    tanh_sinh,
)
from ..special_functions import to_real

__all__ = [
    "Side",
    "integral_side",
    "quadrature_side",
    "stirling_side",
    "dirichlet_side",
    "exact_side",
    "function_side",
]

METHODS = ("quadrature", "series", "exact", "special-function", "closed-form")


@dataclass(frozen=True)
class Side:
    value: mp.mpf
    error: mp.mpf
    method: str
    terms_used: int = 0
    converged: bool = True
    partial_sum: mp.mpf | None = None

    @property
    def is_series(self) -> bool:
        return self.method == "series"

    @classmethod
    def from_sum(cls, result: SumResult) -> "Side":
        return cls(result.value, result.tail_estimate, "series", result.terms_used,
                   result.converged, result.partial_sum)


def _affine(side: Side, scale, offset, ctx) -> Side:
    if scale == 1 and offset == 0:
        return side
    with ctx.workdps():
        s, o = to_real(Fraction(scale)), to_real(Fraction(offset))
        partial = None if side.partial_sum is None else o + s * side.partial_sum
        return Side(o + s * side.value, abs(s) * side.error, side.method, side.terms_used,
                    side.converged, partial)


def integral_side(f, k: int, ctx: EvaluationContext, scale=1, offset=0) -> Side:
    """offset + scale * (-1)^k/k! int_0^1 f (ln x)^k dx."""
    value, err = integrate_log_kernel(f, k, ctx, error=True)
    return _affine(Side(value, err, "quadrature"), scale, offset, ctx)


def quadrature_side(f, ctx: EvaluationContext, scale=1, offset=0) -> Side:
    """offset + scale * int_0^1 f dx."""
    result = tanh_sinh(f, ctx)
    return _affine(Side(result.value, result.error, "quadrature"), scale, offset, ctx)


def stirling_side(weights: CoefficientStream, k: int, ctx: EvaluationContext, tol,
                  scale=1, offset=0) -> Side:
    """offset + scale * sum_{n>=k} [n,k] w_n / n!."""
    return _affine(Side.from_sum(sum_stirling_weighted(weights, k, ctx, tol)), scale, offset, ctx)


def dirichlet_side(coeffs: CoefficientStream, k: int, ctx: EvaluationContext, tol,
                   scale=1, offset=0) -> Side:
    """offset + scale * sum_{p>=0} a_p / (p+1)^(k+1)."""
    return _affine(Side.from_sum(sum_dirichlet(coeffs, k, ctx, tol)), scale, offset, ctx)


def exact_side(value: Fraction, ctx: EvaluationContext) -> Side:
    with ctx.workdps():
        return Side(to_real(Fraction(value)), mp.mpf(0), "exact")


def function_side(value: mp.mpf, ctx: EvaluationContext) -> Side:
    """A special-function value computed to the working precision."""
    with ctx.workdps():
        err = 10 * abs(value) * mp.mpf(10) ** (-ctx.dps) if value else mp.mpf(10) ** (-ctx.dps)
        return Side(+value, err, "special-function")
