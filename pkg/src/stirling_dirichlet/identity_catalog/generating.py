"""Three independent evaluations of sum_p a_p/(p+1)^(k+1) for a generating function f.

1. the Dirichlet series summed directly,
2. the Stirling series sum_n [n,k]/n! int_0^1 f(x)(1-x)^n dx,
3. the log-kernel integral (-1)^k/k! int_0^1 f(x)(ln x)^k dx.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import mpmath as mp

from ..context import DEFAULT_CONTEXT, EvaluationContext, InvalidParameters
from ..series_engine import CoefficientStream
from . import sequences as sq
from .sides import Side, dirichlet_side, integral_side, stirling_side
from .verification import _digits

__all__ = ["GeneratingCase", "ThreeWayReport", "CASES", "three_way"]


@dataclass(frozen=True)
class GeneratingCase:
    name: str
    f: Callable
    coefficients: Callable[[], CoefficientStream]
    # w_n = int_0^1 f(x)(1-x)^n dx, up to the constant factor weight_scale
    weights: Callable[[EvaluationContext], CoefficientStream]
    weight_scale: int
    min_k: int


CASES = {
    "geometric": GeneratingCase(
        "geometric", sq.geometric_gf, sq.ones, lambda ctx: sq.inverse_power(1), 1, 1),
    "catalan": GeneratingCase(
        "catalan", sq.catalan_gf, sq.catalan_quarter, sq.beta_even_weights, 4, 0),
    "derangement": GeneratingCase(
        "derangement", sq.derangement_gf, sq.derangement_scaled,
        lambda ctx: sq.exp_tail_weights(-1, shift=1), 1, 1),
    "exponential": GeneratingCase(
        "exponential", sq.exp_gf, lambda: sq.inverse_factorial(1),
        lambda ctx: sq.exp_tail_weights(1), 1, 0),
}


@dataclass(frozen=True)
class ThreeWayReport:
    case: str
    k: int
    dirichlet: Side
    stirling: Side
    integral: Side
    consistent: bool
    stirling_digits: int

    def pairs(self):
        named = (("dirichlet", self.dirichlet), ("stirling", self.stirling), ("integral", self.integral))
        for (na, a), (nb, b) in itertools.combinations(named, 2):
            yield na, nb, abs(a.value - b.value), a.error + b.error


def three_way(case: str | GeneratingCase, k: int, ctx: EvaluationContext = DEFAULT_CONTEXT,
              tol="1e-6") -> ThreeWayReport:
    """Compare the three evaluations; ``consistent`` means every pair is within
    the sum of its error estimates (plus 10**-target_digits relative)."""
    c = CASES[case] if isinstance(case, str) else case
    if k < c.min_k:
        raise InvalidParameters(f"{c.name} needs k >= {c.min_k}; the series diverge below")
    with ctx.workdps():
        tol = mp.mpf(tol)
    d = dirichlet_side(c.coefficients(), k, ctx, tol)
    s = stirling_side(c.weights(ctx), k, ctx, tol, scale=c.weight_scale)
    i = integral_side(c.f, k, ctx)
    report = ThreeWayReport(c.name, k, d, s, i, True, _digits(s.value, i.value, ctx.target_digits))
    with ctx.workdps():
        resolution = mp.mpf(10) ** (-ctx.target_digits)
        ok = all(diff <= err + resolution * abs(i.value) for _, _, diff, err in report.pairs())
    return ThreeWayReport(c.name, k, d, s, i, ok, report.stirling_digits)
