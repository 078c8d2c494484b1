"""The registry: one declarative record per identity.

Each record names its parameters, the predicate on which the identity is
claimed, two independent evaluators and, where one is known, a closed
form.  Evaluators receive ``(params, ctx, tol)`` and return a ``Side``;
``tol`` is the relative tolerance for any series they sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..context import InvalidParameters
from ..special_functions import hurwitz_zeta
from . import sequences as sq
from .expressions import E, LN2, LN_1_SQRT2, PI, SQRT2, Expr, Q, Rational, ZetaValue
from .sides import (
    Side,
    dirichlet_side,
    exact_side,
    function_side,
    integral_side,
    quadrature_side,
    stirling_side,
)

__all__ = [
    "Parameter",
    "Special",
    "IdentityRecord",
    "REGISTRY",
    "get_record",
    "resolve",
    "euler_sum_expr",
    "zeta_tail_expr",
]

TIERS = ("fast", "moderate", "slow")


@dataclass(frozen=True)
class Parameter:
    name: str
    kind: str  # "int" or "rational"
    grid: tuple

    def coerce(self, value):
        if self.kind == "int":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise InvalidParameters(f"{self.name} must be an integer, got {value}")
                return int(value)
            if isinstance(value, str):
                try:
                    return int(value)
                except ValueError:
                    raise InvalidParameters(f"{self.name} must be an integer, got {value!r}") from None
            if isinstance(value, float) and not value.is_integer():
                raise InvalidParameters(f"{self.name} must be an integer, got {value}")
            return int(value)
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError, TypeError):
            raise InvalidParameters(f"{self.name} must be rational, got {value!r}") from None


@dataclass(frozen=True)
class Special:
    """A distinguished parameter point with its own label."""

    eq: str
    when: Callable[[dict], bool]


Evaluator = Callable[[dict, object, object], Side]


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    eq: str
    parameters: tuple
    predicate: Callable[[dict], bool]
    predicate_text: str
    lhs: Evaluator
    rhs: Evaluator
    lhs_text: str
    rhs_text: str
    closed_form: Callable[[dict], Expr | None] = lambda p: None
    tier: str | Callable[[dict], str] = "moderate"
    specials: tuple = ()
    notes: str = ""
    _names: tuple = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        object.__setattr__(self, "_names", tuple(p.name for p in self.parameters))

    @property
    def parameter_names(self) -> tuple:
        return self._names

    def normalize(self, params: dict) -> dict:
        """Coerce and check parameters; raises InvalidParameters."""
        params = {k: v for k, v in (params or {}).items() if v is not None}
        unknown = set(params) - set(self._names)
        if unknown:
            raise InvalidParameters(f"{self.id} takes {list(self._names)}, got {sorted(unknown)}")
        missing = [n for n in self._names if n not in params]
        if missing:
            raise InvalidParameters(f"{self.id} needs parameters {missing}")
        out = {p.name: p.coerce(params[p.name]) for p in self.parameters}
        if not self.predicate(out):
            raise InvalidParameters(f"{self.id} requires {self.predicate_text}, got {_fmt(out)}")
        return out

    def special_for(self, params: dict) -> Special | None:
        for s in self.specials:
            if s.when(params):
                return s
        return None

    def eq_for(self, params: dict) -> str:
        s = self.special_for(params)
        return s.eq if s else self.eq

    def tier_for(self, params: dict) -> str:
        return self.tier(params) if callable(self.tier) else self.tier

    def grid(self):
        """Default parameter points satisfying the predicate, in a fixed order."""
        points = [{}]
        for p in self.parameters:
            points = [dict(pt, **{p.name: v}) for pt in points for v in p.grid]
        return [pt for pt in points if self.predicate(pt)]

    def schema(self) -> dict:
        return {p.name: p.kind for p in self.parameters}


def _fmt(params: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in params.items())


K = Parameter("k", "int", (0, 1, 2, 3, 4))
Q_ = Parameter("q", "int", (0, 1, 2, 3))
R_INT = Parameter("r", "int", (0, 1, 2))
R_RAT = Parameter("r", "rational", (Fraction(0), Fraction(1), Fraction(2)))
A = Parameter("a", "rational", (Fraction(1, 2), Fraction(1), Fraction(2)))


# ------------------------------------------------------------- closed forms


def zeta_tail_expr(k: int) -> Expr:
    """k + 1 - sum_{j=1}^{k} zeta(j+1)."""
    out = Q(k + 1)
    for j in range(1, k + 1):
        out = out - ZetaValue(j + 1)
    return out


def euler_sum_expr(m: int) -> Expr:
    """sum_{p>=1} H_p / p^m for m >= 2, by Euler's reduction to zeta values."""
    if m < 2:
        raise ValueError("m must be >= 2")
    out = Q(m + 2, 2) * ZetaValue(m + 1)
    for j in range(1, m - 1):
        out = out - Q(1, 2) * ZetaValue(j + 1) * ZetaValue(m - j)
    return out


def _hurwitz_expr(s: int, a: Fraction) -> Expr | None:
    """zeta(s, a) for integer a >= 1 or half-integer a > 0."""
    if a.denominator == 1 and a >= 1:
        out = ZetaValue(s)
        for m in range(1, int(a)):
            out = out - Q(1, m**s)
        return out
    if a.denominator == 2:
        out = (2**s - 1) * ZetaValue(s)
        for j in range(int(a - Fraction(1, 2))):
            out = out - Rational(Fraction(2 * j + 1, 2) ** -s)
        return out
    return None


def _catalan_half_closed(k: int) -> Expr | None:
    if k == 0:
        return Q(1, 6)
    if k == 1:
        return Q(2, 3) * LN2 - Q(7, 18)
    if k == 2:
        return Q(-77, 54) + Q(1, 18) * PI**2 + Q(16, 9) * LN2 - Q(2, 3) * LN2**2
    return None


def _catalan_beta_closed(k: int) -> Expr | None:
    if k == 0:
        return 4 * (1 - LN2)
    if k == 1:
        return 8 - 8 * LN2 + 4 * LN2**2 - Q(1, 3) * PI**2
    return None


def _even_central_closed(k: int) -> Expr | None:
    if k == 0:
        return Q(8, 3) - Q(2, 3) * SQRT2
    if k == 1:
        # ln 8 = 3 ln 2
        return Q(80, 9) - Q(32, 9) * (3 * LN2 + SQRT2) + Q(16, 3) * LN_1_SQRT2
    return None


def _binomial_finite(r: Fraction, k: int) -> Fraction | None:
    """sum_p C(r,p) (-1)^p / (p+1)^(k+1), finite when r is a nonnegative integer."""
    if r.denominator != 1 or r < 0:
        return None
    r = int(r)
    return sum((Fraction((-1) ** p * math.comb(r, p), (p + 1) ** (k + 1)) for p in range(r + 1)),
               Fraction(0))


def _symmetric_closed(a: int, b: int) -> Expr | None:
    """sum_{n>=a} [n,a] / (n! (n+1)^(b+1)), symmetric in (a, b)."""
    lo, hi = min(a, b), max(a, b)
    if lo == 0:
        return Q(1)
    if lo == 1:
        return zeta_tail_expr(hi)
    return None


def _adamchik_closed(k: int, q: int) -> Expr | None:
    """G(k, q) = sum_{n>=k} [n,k] / (n! n^q), symmetric in (k, q)."""
    lo, hi = min(k, q), max(k, q)
    if lo == 1:
        return ZetaValue(hi + 1)
    if lo == 2:
        return euler_sum_expr(hi + 1) - ZetaValue(hi + 2)
    return None


# --------------------------------------------------------------- evaluators


def _log_kernel(f_of_params, scale=1, offset=0):
    def ev(p, ctx, tol):
        return integral_side(f_of_params(p), p.get("k", 0), ctx, scale, offset)

    return ev


def _stirling(stream_of_params, scale=1, offset=0, k_name="k"):
    def ev(p, ctx, tol):
        return stirling_side(stream_of_params(p, ctx), p[k_name], ctx, tol, scale, offset)

    return ev


def _hurwitz_lhs(p, ctx, tol):
    # max_terms budgets the series sides, not the Euler-Maclaurin evaluation
    fn_ctx = ctx.with_(max_terms=max(ctx.max_terms, 10**6))
    return function_side(hurwitz_zeta(p["k"] + 1, p["a"], fn_ctx), ctx)


def _unit_rhs(p, ctx, tol):
    # the Dirichlet side has a_0 = 1 and nothing else
    return exact_side(Fraction(1), ctx)


def _aux_rhs(p, ctx, tol):
    # sum_{n>=1} 1/(n(2n+3)) = int_0^1 -t^2 ln(1-t^2) dt
    from ..series_engine import log_y

    def f(x, y):
        t2 = x * x
        return -t2 * log_y(t2, y * (1 + x))

    return quadrature_side(f, ctx)


def _aux_lhs(p, ctx, tol):
    # 1/(n(2n+3)) = a_p/(p+1) with n = p+1, a_p = 1/(2p+5)
    return dirichlet_side(sq.inverse_linear_coefficients(2, 5), 0, ctx, tol)


def _k_at_least(m):
    return lambda p: p["k"] >= m


_RECORDS = [
    IdentityRecord(
        "zeta_stirling", "(3)", (K,), _k_at_least(1), "k >= 1",
        _log_kernel(lambda p: sq.geometric_gf),
        _stirling(lambda p, ctx: sq.inverse_power(1)),
        "zeta(k+1) = sum_p 1/(p+1)^(k+1), by its log-kernel integral",
        "sum_{n>=k} [n,k] / (n! n)",
        closed_form=lambda p: ZetaValue(p["k"] + 1),
    ),
    IdentityRecord(
        "hurwitz_stirling", "(4)", (K, A), lambda p: p["k"] >= 1 and p["a"] > 0,
        "a > 0, k >= 1",
        _hurwitz_lhs,
        _stirling(lambda p, ctx: sq.hurwitz_weights(p["a"], ctx)),
        "zeta(k+1, a) by Euler-Maclaurin",
        "Gamma(a) sum_{n>=k} [n,k] / (n Gamma(n+a))",
        closed_form=lambda p: _hurwitz_expr(p["k"] + 1, Fraction(p["a"])),
        tier=lambda p: "slow" if p["a"] < 1 else "moderate",
        notes="weights decay like n^-a, so a < 1 converges slowly",
    ),
    IdentityRecord(
        "euler_sum_trigamma", "(5)", (K,), _k_at_least(1), "k >= 1",
        _log_kernel(lambda p: sq.harmonic_next_gf),
        _stirling(lambda p, ctx: sq.trigamma_weights(ctx)),
        "sum_{p>=1} H_p / p^(k+1), by its log-kernel integral",
        "sum_{n>=k} [n,k] psi'(n) / n!",
        closed_form=lambda p: euler_sum_expr(p["k"] + 1),
    ),
    IdentityRecord(
        "hyperharmonic", "(11)", (K, R_INT), lambda p: p["k"] > p["r"] >= 0, "k > r >= 0",
        _log_kernel(lambda p: sq.hyperharmonic_gf(p["r"])),
        _stirling(lambda p, ctx: sq.inverse_power(2, shift=-p["r"])),
        "sum_{p>=1} h_{p-1}^(r+1) / p^(k+1), by its log-kernel integral",
        "sum_{n>=k} [n,k] / (n! (n-r)^2)",
        closed_form=lambda p: (euler_sum_expr(p["k"] + 1) - ZetaValue(p["k"] + 2)) if p["r"] == 0 else None,
    ),
    IdentityRecord(
        "harmonic_shift", "(12)", (K,), _k_at_least(1), "k >= 1",
        _log_kernel(lambda p: sq.hyperharmonic_gf(0)),
        _stirling(lambda p, ctx: sq.inverse_power(2)),
        "sum_{p>=1} H_{p-1} / p^(k+1), by its log-kernel integral",
        "sum_{n>=k} [n,k] / (n! n^2)",
        closed_form=lambda p: euler_sum_expr(p["k"] + 1) - ZetaValue(p["k"] + 2),
    ),
    IdentityRecord(
        "adamchik_symmetry", "(13)", (K, Q_), lambda p: p["k"] >= 1 and p["q"] >= 1,
        "k >= 1, q >= 1",
        _stirling(lambda p, ctx: sq.inverse_power(p["q"])),
        _stirling(lambda p, ctx: sq.inverse_power(p["k"]), k_name="q"),
        "G(k, q) = sum_{n>=k} [n,k] / (n! n^q)",
        "G(q, k) = sum_{n>=q} [n,q] / (n! n^k)",
        closed_form=lambda p: _adamchik_closed(p["k"], p["q"]),
    ),
    IdentityRecord(
        "stirling_symmetry", "(14)", (Q_, K), lambda p: p["q"] >= 0 and p["k"] >= 0,
        "q >= 0, k >= 0",
        _stirling(lambda p, ctx: sq.inverse_power(p["k"] + 1, shift=1), k_name="q"),
        _stirling(lambda p, ctx: sq.inverse_power(p["q"] + 1, shift=1)),
        "sum_{n>=q} [n,q] / (n! (n+1)^(k+1))",
        "sum_{n>=k} [n,k] / (n! (n+1)^(q+1))",
        closed_form=lambda p: _symmetric_closed(p["q"], p["k"]),
    ),
    IdentityRecord(
        "unit_sum", "(15)", (K,), _k_at_least(0), "k >= 0",
        _stirling(lambda p, ctx: sq.inverse_power(1, shift=1)),
        _unit_rhs,
        "sum_{n>=k} [n,k] / (n+1)!",
        "1",
        closed_form=lambda p: Q(1),
        tier=lambda p: "fast" if p["k"] == 0 else "slow",
        notes="terms decay like (ln n)^(k-1)/n^2",
    ),
    IdentityRecord(
        "zeta_tail", "(16)", (K,), _k_at_least(1), "k >= 1",
        _stirling(lambda p, ctx: sq.inverse_power(2, shift=1)),
        _log_kernel(lambda p: sq.log_power_gf(1)),
        "sum_{n>=k} [n,k] / (n! (n+1)^2)",
        "sum_{p>=1} 1 / (p (p+1)^(k+1)), by its log-kernel integral",
        closed_form=lambda p: zeta_tail_expr(p["k"]),
        tier="fast",
    ),
    IdentityRecord(
        "harmonic_over_shifted", "(17)", (K,), _k_at_least(0), "k >= 0",
        _stirling(lambda p, ctx: sq.inverse_power(3, shift=1)),
        _log_kernel(lambda p: sq.log_power_gf(2)),
        "sum_{n>=k} [n,k] / (n! (n+1)^3)",
        "sum_{p>=1} H_{p-1} / (p (p+1)^(k+1)), by its log-kernel integral",
        closed_form=lambda p: _symmetric_closed(2, p["k"]),
    ),
    IdentityRecord(
        "cauchy_first_series", "(18)", (K,), _k_at_least(0), "k >= 0",
        _log_kernel(lambda p: sq.cauchy_first_gf),
        _stirling(lambda p, ctx: sq.log_ratio(1)),
        "sum_{p>=0} (-1)^p c_p / (p! (p+1)^(k+1)), by its log-kernel integral",
        "sum_{n>=k} [n,k] ln((n+2)/(n+1)) / n!",
        closed_form=lambda p: LN2 if p["k"] == 0 else None,
    ),
    IdentityRecord(
        "cauchy_second_series", "(19)", (K,), _k_at_least(1), "k >= 1",
        _log_kernel(lambda p: sq.cauchy_second_gf),
        _stirling(lambda p, ctx: sq.log_ratio(0)),
        "sum_{p>=0} d_p / (p! (p+1)^(k+1)), by its log-kernel integral",
        "sum_{n>=k} [n,k] ln(1 + 1/n) / n!",
        notes="both sides diverge at k = 0",
    ),
    IdentityRecord(
        "derangement_series", "(20)", (K,), _k_at_least(1), "k >= 1",
        _log_kernel(lambda p: sq.derangement_gf),
        _stirling(lambda p, ctx: sq.exp_tail_weights(-1, shift=1)),
        "sum_{p>=0} D_p / (p! (p+1)^(k+1)), by its log-kernel integral",
        "sum_{n>=k} [n,k] (-1)^n/n (1/e - sum_{j<n} (-1)^j/j!)",
        notes="both sides diverge at k = 0",
    ),
    IdentityRecord(
        "alt_exp_series", "(21)", (K,), _k_at_least(0), "k >= 0",
        _log_kernel(lambda p: sq.exp_neg_gf),
        _stirling(lambda p, ctx: sq.exp_tail_weights(-1)),
        "sum_{p>=0} (-1)^p / (p! (p+1)^(k+1)), by its log-kernel integral",
        "sum_{n>=k} [n,k] (-1)^(n+1) (1/e - sum_{j<=n} (-1)^j/j!)",
        closed_form=lambda p: (1 - E ** -1) if p["k"] == 0 else None,
    ),
    IdentityRecord(
        "exp_series", "(22)", (K,), _k_at_least(0), "k >= 0",
        _log_kernel(lambda p: sq.exp_gf),
        _stirling(lambda p, ctx: sq.exp_tail_weights(1)),
        "sum_{p>=0} 1 / (p! (p+1)^(k+1)), by its log-kernel integral",
        "sum_{n>=k} [n,k] (e - sum_{j<=n} 1/j!)",
        closed_form=lambda p: (E - 1) if p["k"] == 0 else None,
    ),
    IdentityRecord(
        "binomial_r", "(23)", (K, R_RAT), lambda p: p["k"] >= 0 and p["k"] + p["r"] + 1 > 0,
        "k >= 0, k + r + 1 > 0",
        _log_kernel(lambda p: sq.binomial_gf(p["r"])),
        _stirling(lambda p, ctx: sq.inverse_linear(1, p["r"] + 1)),
        "sum_{p>=0} C(r,p) (-1)^p / (p+1)^(k+1), by its log-kernel integral",
        "sum_{n>=k} [n,k] / (n! (n+r+1))",
        closed_form=lambda p: (None if (v := _binomial_finite(Fraction(p["r"]), p["k"])) is None
                               else Rational(v)),
        tier=lambda p: "fast" if _binomial_finite(Fraction(p["r"]), p["k"]) is not None else "moderate",
        specials=(Special("(24)", lambda p: p["r"] == 1), Special("(25)", lambda p: p["r"] == 2)),
    ),
    IdentityRecord(
        "central_binomial", "(26)", (K,), _k_at_least(0), "k >= 0",
        _log_kernel(lambda p: sq.central_gf),
        _stirling(lambda p, ctx: sq.inverse_linear(2, 1), scale=2),
        "sum_{p>=0} C(2p,p) / (4^p (p+1)^(k+1)), by its log-kernel integral",
        "2 sum_{n>=k} [n,k] / (n! (2n+1))",
        closed_form=lambda p: Q(2) if p["k"] == 0 else None,
    ),
    IdentityRecord(
        "central_binomial_minus", "(27)", (K,), _k_at_least(0), "k >= 0",
        _log_kernel(lambda p: sq.central_minus_gf),
        _stirling(lambda p, ctx: sq.inverse_linear(2, 3), scale=-2),
        "sum_{p>=0} C(2p,p) / (4^p (2p-1) (p+1)^(k+1)), by its log-kernel integral",
        "-2 sum_{n>=k} [n,k] / (n! (2n+3))",
        closed_form=lambda p: (None if (c := _catalan_half_closed(p["k"])) is None else 2 * c - 1),
    ),
    IdentityRecord(
        "catalan_half", "(28)", (K,), _k_at_least(0), "k >= 0",
        _log_kernel(lambda p: sq.catalan_shift_gf),
        _stirling(lambda p, ctx: sq.inverse_linear(2, 3), scale=-1, offset=Fraction(1, 2)),
        "sum_{p>=1} C_{p-1} / (4^p (p+1)^(k+1)), by its log-kernel integral",
        "1/2 - sum_{n>=k} [n,k] / (n! (2n+3))",
        closed_form=lambda p: _catalan_half_closed(p["k"]),
        tier=lambda p: "fast" if p["k"] <= 2 else "moderate",
        specials=(Special("(29)", lambda p: p["k"] == 0), Special("(30)", lambda p: p["k"] == 1),
                  Special("(31)", lambda p: p["k"] == 2)),
        notes="the k = 2 closed form was obtained by computer algebra, not derived",
    ),
    IdentityRecord(
        "catalan_beta", "(32)", (K,), _k_at_least(0), "k >= 0",
        _log_kernel(lambda p: sq.catalan_gf),
        _stirling(lambda p, ctx: sq.beta_even_weights(ctx), scale=4),
        "sum_{p>=0} C_p / (4^p (p+1)^(k+1)), by its log-kernel integral",
        "4 sum_{n>=k} [n,k] beta(2n+2) / n!",
        closed_form=lambda p: _catalan_beta_closed(p["k"]),
        tier=lambda p: "fast" if p["k"] <= 1 else "moderate",
        specials=(Special("(33)", lambda p: p["k"] == 0), Special("(34)", lambda p: p["k"] == 1),
                  Special("(35)", lambda p: p["k"] == 2)),
    ),
    IdentityRecord(
        "catalan_log_integral", "(36)", (K,), _k_at_least(0), "k >= 0",
        lambda p, ctx, tol: dirichlet_side(sq.catalan_quarter(), p["k"], ctx, tol),
        _log_kernel(lambda p: sq.catalan_gf),
        "sum_{p>=0} C_p / (4^p (p+1)^(k+1)), summed directly",
        "2 (-1)^k/k! int_0^1 (ln x)^k / (1 + sqrt(1-x)) dx",
        closed_form=lambda p: _catalan_beta_closed(p["k"]),
        tier=lambda p: "fast" if p["k"] <= 1 else "moderate",
        specials=(Special("(37)", lambda p: p["k"] == 1),),
    ),
    IdentityRecord(
        "even_central", "(38),(39)", (K,), _k_at_least(0), "k >= 0",
        _log_kernel(lambda p: sq.even_central_gf),
        _stirling(lambda p, ctx: sq.a_even_weights(ctx)),
        "sum_{p>=0} C(4p,2p) / (16^p (p+1)^(k+1)), by its log-kernel integral",
        "sum_{n>=k} [n,k] A_n / n!",
        closed_form=lambda p: _even_central_closed(p["k"]),
        tier=lambda p: "fast" if p["k"] <= 1 else "moderate",
        specials=(Special("(40)", lambda p: p["k"] == 0), Special("(41)", lambda p: p["k"] == 1)),
    ),
    IdentityRecord(
        "aux_sum_2n3", "aux", (), lambda p: True, "none",
        _aux_lhs,
        _aux_rhs,
        "sum_{n>=1} 1 / (n (2n+3)), summed directly",
        "int_0^1 -t^2 ln(1-t^2) dt",
        closed_form=lambda p: Q(8, 9) - Q(2, 3) * LN2,
        tier="fast",
    ),
]

REGISTRY: dict[str, IdentityRecord] = {r.id: r for r in _RECORDS}

SPECIAL_SUFFIX = "_special"


def get_record(identity_id: str) -> IdentityRecord:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise InvalidParameters(f"unknown identity {identity_id!r}") from None


def resolve(identity_id: str, params: dict) -> tuple[IdentityRecord, dict]:
    """Look up a record (accepting the ``<id>_special`` alias) and check params.

    The alias restricts the record to its distinguished special points.
    """
    special = identity_id.endswith(SPECIAL_SUFFIX) and identity_id not in REGISTRY
    base = identity_id[: -len(SPECIAL_SUFFIX)] if special else identity_id
    record = get_record(base)
    params = record.normalize(params)
    if special:
        if not record.specials:
            raise InvalidParameters(f"{base} has no special cases")
        if record.special_for(params) is None:
            labels = ", ".join(s.eq for s in record.specials)
            raise InvalidParameters(f"{_fmt(params)} is not a special case of {base} ({labels})")
    return record, params
