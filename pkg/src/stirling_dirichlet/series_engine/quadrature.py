"""Double-exponential (tanh-sinh) quadrature on [0, 1].

Integrands are called as ``f(x, y)`` where ``y = 1 - x`` is supplied
separately.  Both coordinates come straight from the node transform, so
neither loses relative accuracy near its endpoint; this is what makes
``ln(1-x)``, ``(1-x)**-0.5`` or ``1/sqrt(1-sqrt(x))`` safe to evaluate at
nodes extremely close to x = 1.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable

import mpmath as mp

from ..context import DEFAULT_CONTEXT, EvaluationContext, QuadratureNonconvergent

__all__ = [
    "Integrand",
    "QuadratureResult",
    "tanh_sinh",
    "integrate_weighted",
    "integrate_log_kernel",
    "log_x",
    "log_y",
]

Integrand = Callable[[mp.mpf, mp.mpf], mp.mpf]

# nodes past t = 11 sit within exp(-pi sinh 11) ~ 1e-13000 of an endpoint
_T_CAP = 11.0
_MIN_LEVEL = 3


@dataclass(frozen=True)
class QuadratureResult:
    value: mp.mpf
    error: mp.mpf
    level: int
    evaluations: int


def log_x(x, y):
    """ln x, accurate for x near 0 and near 1."""
    return mp.log(x) if x < 0.5 else mp.log1p(-y)


def log_y(x, y):
    """ln(1 - x), accurate for x near 0 and near 1."""
    return mp.log(y) if y < 0.5 else mp.log1p(-x)


_node_cache: dict[tuple[int, int], list[tuple[mp.mpf, mp.mpf, mp.mpf]]] = {}
_node_lock = threading.Lock()


def _level_nodes(dps: int, level: int):
    """(x, y, weight) for the new positive nodes of a level, in increasing t."""
    key = (dps, level)
    nodes = _node_cache.get(key)
    if nodes is not None:
        return nodes
    with mp.workdps(dps):
        h = mp.mpf(2) ** (-level)
        step = 1 if level == 0 else 2
        start = 1
        out = []
        j = start
        while j * h <= _T_CAP:
            t = j * h
            u = mp.pi * mp.sinh(t)
            q = mp.exp(-u)
            x = 1 / (1 + q)
            y = q * x
            w = mp.pi * mp.cosh(t) * x * y
            out.append((x, y, w))
            j += step
    with _node_lock:
        _node_cache.setdefault(key, out)
    return _node_cache[key]


def tanh_sinh(f: Integrand, ctx: EvaluationContext = DEFAULT_CONTEXT) -> QuadratureResult:
    """Integrate ``f(x, 1-x)`` over (0, 1).

    Levels halve the step until two successive estimates agree to the
    working precision.  The reported error is the last level difference,
    which overstates the true error of a converged double-exponential rule.
    """
    dps = ctx.dps
    with mp.workdps(dps):
        eps = mp.mpf(10) ** (-dps)
        tol = mp.mpf(10) ** (-(ctx.target_digits + ctx.guard_digits // 2))
        evaluations = 1
        half = mp.mpf(1) / 2
        centre = (mp.pi / 4) * f(half, half)
        prev = None
        partial = centre
        for level in range(ctx.max_quadrature_level + 1):
            h = mp.mpf(2) ** (-level)
            acc = mp.mpf(0)
            quiet = 0
            for x, y, w in _level_nodes(dps, level):
                term = w * (f(x, y) + f(y, x))
                evaluations += 2
                acc += term
                if abs(term) <= eps * abs(partial + h * acc):
                    quiet += 1
                    if quiet >= 3:
                        break
                else:
                    quiet = 0
            if level == 0:
                partial = centre + acc
            else:
                partial = partial + acc
            estimate = h * partial
            if prev is not None and level >= _MIN_LEVEL:
                diff = abs(estimate - prev)
                scale = abs(estimate) if estimate else mp.mpf(1)
                if diff <= tol * scale or diff == 0:
                    err = max(diff, eps * scale)
                    return QuadratureResult(+estimate, err, level, evaluations)
            prev = estimate
    raise QuadratureNonconvergent(
        f"tanh-sinh levels did not agree within level cap {ctx.max_quadrature_level}"
    )


def _quad(f, ctx, error):
    result = tanh_sinh(f, ctx)
    return (result.value, result.error) if error else result.value


def integrate_weighted(f: Integrand, n: int, ctx: EvaluationContext = DEFAULT_CONTEXT,
                       error: bool = False):
    """int_0^1 f(x) (1-x)^n dx.

    With ``error=True`` returns ``(value, error_estimate)``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return _quad(lambda x, y: f(x, y) * y**n, ctx, error)


def integrate_log_kernel(f: Integrand, k: int, ctx: EvaluationContext = DEFAULT_CONTEXT,
                         error: bool = False):
    """(-1)^k / k! * int_0^1 f(x) (ln x)^k dx.

    With ``error=True`` returns ``(value, error_estimate)``.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    sign = -1 if k % 2 else 1

    def g(x, y):
        return f(x, y) * log_x(x, y) ** k

    value, err = _quad(g, ctx, True)
    with ctx.workdps():
        value, err = sign * value / math.factorial(k), err / math.factorial(k)
    return (value, err) if error else value
