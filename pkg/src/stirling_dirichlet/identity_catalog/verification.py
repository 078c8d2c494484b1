"""Evaluate identities side by side and classify the agreement."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import mpmath as mp

from ..context import DEFAULT_CONTEXT, EvaluationContext, NoClosedForm
from .records import REGISTRY, IdentityRecord, resolve
from .sides import Side

__all__ = [
    "VerificationReport",
    "IdentitySummary",
    "TIER_FLOOR",
    "TIER_TOLERANCE",
    "list_identities",
    "verify",
    "closed_form",
    "closed_form_expr",
    "evaluate_side",
    "verify_symmetry",
    "default_grid",
    "report_all",
    "assess",
]

STATUSES = ("verified", "agreed-within-tails", "budget-exhausted", "failed")

# digits a report must agree to before it counts as verified
TIER_FLOOR = {"fast": 25, "moderate": 5, "slow": 2}
# relative tolerance handed to the series on either side
TIER_TOLERANCE = {"fast": "1e-6", "moderate": "1e-6", "slow": "1e-3"}


@dataclass(frozen=True)
class IdentitySummary:
    id: str
    eq: str
    parameters: dict
    predicate: str
    tier: str
    specials: tuple
    lhs: str
    rhs: str


@dataclass(frozen=True)
class VerificationReport:
    id: str
    eq: str
    params: dict
    lhs: Side
    rhs: Side
    closed_form: Side | None
    closed_form_text: str | None
    abs_diff: mp.mpf
    rel_diff: mp.mpf
    digits_agreed: int
    status: str
    tier: str
    target_digits: int
    notes: tuple = ()

    @property
    def sides(self) -> list[Side]:
        return [s for s in (self.lhs, self.rhs, self.closed_form) if s is not None]

    @property
    def terms_used(self) -> int:
        return sum(s.terms_used for s in self.sides)

    @property
    def tail_estimate(self) -> mp.mpf:
        return max(s.error for s in self.sides)

    @property
    def lhs_rhs_digits(self) -> int:
        """Digits shared by the two sides alone, ignoring any closed form."""
        return _digits(self.lhs.value, self.rhs.value, self.target_digits)

    @property
    def ok(self) -> bool:
        return self.status != "failed"


def _digits(a: mp.mpf, b: mp.mpf, cap: int) -> int:
    diff = abs(a - b)
    scale = max(abs(a), abs(b))
    if diff == 0 or (scale and diff / scale < mp.mpf(10) ** (-cap)):
        return cap
    if not scale:
        return cap
    return max(0, min(cap, int(mp.floor(-mp.log10(diff / scale)))))


def assess(sides: list[Side], tier: str, ctx: EvaluationContext):
    """(status, digits_agreed) for a set of sides that should be equal.

    Every pair is compared against its combined error, with a floor of
    10**-target_digits relative to the values.  Any pair off by more than
    ten times that is a failure.  Otherwise an unconverged series makes the
    report budget-exhausted; if all pairs are within their errors and the
    best pair agrees to the tier's digit floor it is verified, and else
    agreed-within-tails.
    """
    floor = min(TIER_FLOOR[tier], max(1, ctx.target_digits - 5))
    with ctx.workdps():
        resolution = mp.mpf(10) ** (-ctx.target_digits)
        within = True
        failed = False
        for a, b in itertools.combinations(sides, 2):
            diff = abs(a.value - b.value)
            scale = max(abs(a.value), abs(b.value), mp.mpf(1) if not (a.value or b.value) else 0)
            combined = a.error + b.error + resolution * scale
            if diff > combined:
                within = False
            if diff > 10 * combined:
                failed = True
        # best pair: for closed-form backed points this is the closed form
        # against the quadrature side, while the series side need only sit
        # within its tail
        best = max(_digits(a.value, b.value, ctx.target_digits)
                   for a, b in itertools.combinations(sides, 2))
        if failed:
            return "failed", best
        if any(s.is_series and not s.converged for s in sides):
            return "budget-exhausted", best
        if within and best >= floor:
            return "verified", best
        return "agreed-within-tails", best


def _notes(lhs: Side, rhs: Side) -> tuple:
    out = []
    for label, s in (("lhs", lhs), ("rhs", rhs)):
        if s.is_series and not s.converged:
            out.append(
                f"{label}: budget exhausted after {s.terms_used} terms; partial sum "
                f"{mp.nstr(s.partial_sum, 12)}, tail model adds "
                f"{mp.nstr(s.value - s.partial_sum, 6)} with uncertainty {mp.nstr(s.error, 3)}"
            )
    return tuple(out)


def _series_tol(tier: str, ctx: EvaluationContext):
    with ctx.workdps():
        return max(mp.mpf(TIER_TOLERANCE[tier]), ctx.eps)


def _build_report(record: IdentityRecord, params: dict, lhs: Side, rhs: Side,
                  ctx: EvaluationContext) -> VerificationReport:
    tier = record.tier_for(params)
    expr = record.closed_form(params)
    closed = None
    if expr is not None:
        # the term budget is for the series sides; special functions keep their own
        cf_ctx = ctx.with_(max_terms=max(ctx.max_terms, DEFAULT_CONTEXT.max_terms))
        with ctx.workdps():
            value = expr.evaluate(cf_ctx)
            closed = Side(value, 10 * abs(value) * mp.mpf(10) ** (-ctx.dps), "closed-form")
    sides = [lhs, rhs] + ([closed] if closed is not None else [])
    status, digits = assess(sides, tier, ctx)
    with ctx.workdps():
        abs_diff = abs(lhs.value - rhs.value)
        scale = max(abs(lhs.value), abs(rhs.value))
        rel_diff = abs_diff / scale if scale else abs_diff
    return VerificationReport(
        record.id, record.eq_for(params), dict(params), lhs, rhs, closed,
        None if expr is None else str(expr), abs_diff, rel_diff, digits, status, tier,
        ctx.target_digits, _notes(lhs, rhs),
    )


def verify(identity_id: str, params: dict | None = None,
           ctx: EvaluationContext = DEFAULT_CONTEXT) -> VerificationReport:
    """Evaluate both sides (and any closed form) independently and compare.

    ``identity_id`` may be a registry id or ``<id>_special``, which
    restricts the parameters to the record's special cases.
    Raises InvalidParameters when the parameters are outside the identity's
    stated domain.
    """
    record, params = resolve(identity_id, params or {})
    tol = _series_tol(record.tier_for(params), ctx)
    lhs = record.lhs(params, ctx, tol)
    rhs = record.rhs(params, ctx, tol)
    return _build_report(record, params, lhs, rhs, ctx)


def evaluate_side(identity_id: str, side: str, params: dict | None = None,
                  ctx: EvaluationContext = DEFAULT_CONTEXT) -> Side:
    """Evaluate one side of an identity on its own ("lhs" or "rhs")."""
    if side not in ("lhs", "rhs"):
        raise ValueError("side must be 'lhs' or 'rhs'")
    record, params = resolve(identity_id, params or {})
    tol = _series_tol(record.tier_for(params), ctx)
    return getattr(record, side)(params, ctx, tol)


def closed_form_expr(identity_id: str, params: dict | None = None):
    record, params = resolve(identity_id, params or {})
    expr = record.closed_form(params)
    if expr is None:
        raise NoClosedForm(f"{record.id} has no closed form at {params}")
    return expr


def closed_form(identity_id: str, params: dict | None = None,
                ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
    """The stored closed form at the given parameters; raises NoClosedForm."""
    return closed_form_expr(identity_id, params).evaluate(ctx)


def verify_symmetry(q: int, k: int, ctx: EvaluationContext = DEFAULT_CONTEXT,
                    form: str = "shifted") -> VerificationReport:
    """Compare the two orientations of a Stirling-sum symmetry.

    ``form="shifted"``: sum [n,q]/(n!(n+1)^(k+1)) against the same with q
    and k swapped (q, k >= 0).  ``form="adamchik"``: G(k, q) against G(q, k)
    with G(k, q) = sum [n,k]/(n! n^q) (q, k >= 1).  Both orientations are
    summed with the same budget.
    """
    if form == "shifted":
        return verify("stirling_symmetry", {"q": q, "k": k}, ctx)
    if form == "adamchik":
        return verify("adamchik_symmetry", {"k": k, "q": q}, ctx)
    raise ValueError("form must be 'shifted' or 'adamchik'")


def list_identities() -> list[IdentitySummary]:
    out = []
    for r in REGISTRY.values():
        tiers = sorted({r.tier_for(p) for p in r.grid()}, key=["fast", "moderate", "slow"].index)
        out.append(IdentitySummary(
            r.id, r.eq, r.schema(), r.predicate_text, "/".join(tiers) or "moderate",
            tuple(s.eq for s in r.specials), r.lhs_text, r.rhs_text,
        ))
    return out


def default_grid(ids: list[str] | None = None) -> list[tuple[str, dict]]:
    """Every (id, params) point of the default grid, in registry order."""
    points = []
    for r in REGISTRY.values():
        if ids is not None and r.id not in ids:
            continue
        for p in r.grid():
            points.append((r.id, p))
    return points


def _verify_point(args):
    identity_id, params, ctx = args
    return verify(identity_id, params, ctx)


def report_all(ctx: EvaluationContext = DEFAULT_CONTEXT, jobs: int = 1,
               ids: list[str] | None = None) -> Iterator[tuple[int, VerificationReport]]:
    """Yield ``(index, report)`` for every default grid point.

    With ``jobs > 1`` points run in worker processes and are yielded as they
    finish; ``index`` is the position in the default grid either way.
    Processes rather than threads, because mpmath keeps its precision in
    global state.
    """
    points = default_grid(ids)
    if jobs <= 1:
        for i, (identity_id, params) in enumerate(points):
            yield i, verify(identity_id, params, ctx)
        return
    from concurrent.futures import ProcessPoolExecutor, as_completed

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = {pool.submit(_verify_point, (iid, p, ctx)): i for i, (iid, p) in enumerate(points)}
        for fut in as_completed(futures):
            yield futures[fut], fut.result()


def summarize(reports) -> dict:
    counts = {s: 0 for s in STATUSES}
    for r in reports:
        counts[r.status] += 1
    return counts


__all__ += ["summarize", "STATUSES"]
