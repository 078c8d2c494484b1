"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``python tests/test_acceptance.py`` for just the summary lines, or
``pytest -v tests/test_acceptance.py`` (lines are printed either way).

Expected values are written out from mpmath constants here rather than
taken from the package's closed-form trees, so the two stay independent.
"""

from __future__ import annotations

import math
import sys
import time
from fractions import Fraction

import mpmath as mp
import pytest

from stirling_dirichlet import EvaluationContext
from stirling_dirichlet import core_numbers as cn
from stirling_dirichlet import special_functions as sf
from stirling_dirichlet.identity_catalog import CASES, evaluate_side, three_way, verify, verify_symmetry
from stirling_dirichlet.identity_catalog import sequences as sq
from stirling_dirichlet.identity_catalog.sides import dirichlet_side, quadrature_side, stirling_side
from stirling_dirichlet.series_engine import a_even_integral, sqrt2_reconstruct, sum_dirichlet, sum_stirling_weighted

CTX30 = EvaluationContext(target_digits=30)
BUDGET = 10**6


@pytest.fixture
def emit(capsys):
    """Print one criterion line past pytest's output capture."""

    def write(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)

    return write


def frac(v: Fraction) -> mp.mpf:
    return mp.mpf(v.numerator) / v.denominator


# ------------------------------------------------------------------ 1


def closed_form_cases():
    """(label, evaluate-by-quadrature, expected) with expected built from mpmath."""
    with mp.workdps(80):
        ln2, pi, r2 = +mp.ln2, +mp.pi, mp.sqrt(2)
        z = [None, None] + [mp.zeta(s) for s in range(2, 8)]
        cases = [
            ("catalan_half k=0", lambda: evaluate_side("catalan_half", "lhs", {"k": 0}, CTX30), mp.mpf(1) / 6),
            ("catalan_half k=1", lambda: evaluate_side("catalan_half", "lhs", {"k": 1}, CTX30),
             2 * ln2 / 3 - mp.mpf(7) / 18),
            ("aux sum 1/(n(2n+3))", lambda: evaluate_side("aux_sum_2n3", "rhs", {}, CTX30),
             mp.mpf(8) / 9 - 2 * ln2 / 3),
            ("catalan_half k=2", lambda: evaluate_side("catalan_half", "lhs", {"k": 2}, CTX30),
             mp.mpf(-77) / 54 + pi**2 / 18 + mp.mpf(16) / 9 * ln2 - mp.mpf(2) / 3 * ln2**2),
            ("catalan_beta k=0", lambda: evaluate_side("catalan_beta", "lhs", {"k": 0}, CTX30), 4 * (1 - ln2)),
            ("catalan_log_integral k=1", lambda: evaluate_side("catalan_log_integral", "rhs", {"k": 1}, CTX30),
             8 - 8 * ln2 + 4 * ln2**2 - pi**2 / 3),
            ("sum beta(2n+2)/n", lambda: quadrature_side(sq.beta_over_n_gf, CTX30),
             2 - 2 * ln2 + ln2**2 - pi**2 / 12),
            ("even_central k=0", lambda: evaluate_side("even_central", "lhs", {"k": 0}, CTX30),
             mp.mpf(8) / 3 - mp.mpf(2) / 3 * r2),
            ("even_central k=1", lambda: evaluate_side("even_central", "lhs", {"k": 1}, CTX30),
             mp.mpf(80) / 9 - mp.mpf(32) / 9 * (mp.log(8) + r2) + mp.mpf(16) / 3 * mp.log(r2 + 1)),
        ]
        for k in range(1, 6):
            cases.append((f"zeta_tail k={k}", lambda k=k: evaluate_side("zeta_tail", "rhs", {"k": k}, CTX30),
                          k + 1 - sum(z[j + 1] for j in range(1, k + 1))))
        for k in range(6):
            cases.append((f"binomial_r r=1 k={k}", lambda k=k: evaluate_side("binomial_r", "lhs", {"k": k, "r": 1}, CTX30),
                          1 - mp.mpf(2) ** -(k + 1)))
            cases.append((f"binomial_r r=2 k={k}", lambda k=k: evaluate_side("binomial_r", "lhs", {"k": k, "r": 2}, CTX30),
                          1 - mp.mpf(2) ** -k + mp.mpf(3) ** -(k + 1)))
    return cases


def test_criterion_1_closed_forms(emit):
    tol = mp.mpf(10) ** -25
    bad, slowest = [], 0.0
    for label, run, expected in closed_form_cases():
        start = time.perf_counter()
        got = run()
        elapsed = time.perf_counter() - start
        slowest = max(slowest, elapsed)
        assert got.method == "quadrature", label
        with mp.workdps(80):
            err = abs(got.value - expected)
        if err > tol or elapsed > 10:
            bad.append(f"{label}: |err|={mp.nstr(err, 3)} in {elapsed:.1f}s")
    n = len(closed_form_cases())
    emit(1, not bad, f"{n} closed forms via the log-kernel/quadrature route, tol 1e-25, "
                     f"slowest {slowest:.2f}s" + ("; " + "; ".join(bad) if bad else ""))
    assert not bad


# ------------------------------------------------------------------ 2


def _divergent_k0(case: str):
    """All three routes at k = 0 grow without bound; returns their growth rates.

    The Dirichlet partial sums, and the k = 0 Stirling side and the integral
    (both equal int_0^1 f) cut off at 1 - eps, are compared between two
    cutoffs a factor 10**4 apart.  Each must grow by about c ln(10**4) with
    c = 1 for 1/(1-x) and c = 1/e for e^-x/(1-x).
    """
    f = sq.geometric_gf if case == "geometric" else sq.derangement_gf
    coeffs = sq.ones() if case == "geometric" else sq.derangement_scaled()
    c = mp.mpf(1) if case == "geometric" else mp.exp(-1)
    growth = []
    sums = [sum_dirichlet(coeffs, 0, CTX30.with_(max_terms=n), tol=0).partial_sum for n in (100, 10**6)]
    growth.append((sums[1] - sums[0]) / (c * mp.log(10**4)))
    with mp.workdps(40):
        cut = [mp.quad(lambda x: f(x, 1 - x), [0, 1 - mp.mpf(10) ** -e]) for e in (8, 12)]
    growth.append((cut[1] - cut[0]) / (c * mp.log(10**4)))
    return growth


def _doubling(run, first):
    """Rerun a summation at 2N terms with tol 0; return (|change|, 2*tail)."""
    n = first.terms_used
    again = run(CTX30.with_(max_terms=2 * n))
    return abs(again.value - first.value), 2 * first.tail_estimate


def test_criterion_2_three_way(emit):
    problems, lines = [], []
    ctx = CTX30.with_(max_terms=BUDGET)
    tol = mp.mpf("1e-6")
    for case in ("geometric", "catalan", "derangement", "exponential"):
        gen = CASES[case]
        for k in (0, 1, 2):
            if k < gen.min_k:
                growth = _divergent_k0(case)
                ok = all(abs(g - 1) < 0.05 for g in growth)
                lines.append(f"{case} k={k}: divergent on every route (growth ratios "
                             + ", ".join(mp.nstr(g, 4) for g in growth) + ")")
                if not ok:
                    problems.append(f"{case} k={k} divergence not confirmed")
                continue
            r = three_way(case, k, ctx, tol=tol)
            if not r.consistent:
                problems.append(f"{case} k={k} pair outside errors")
            if r.stirling_digits < 5:
                problems.append(f"{case} k={k} stirling digits {r.stirling_digits}")
            # doubling honesty on both series routes
            st = sum_stirling_weighted(gen.weights(ctx), k, ctx, tol)
            moved, bound = _doubling(lambda c: sum_stirling_weighted(gen.weights(c), k, c, tol=0), st)
            if not moved < bound:
                problems.append(f"{case} k={k} stirling doubling moved {mp.nstr(moved, 3)} >= {mp.nstr(bound, 3)}")
            di = sum_dirichlet(gen.coefficients(), k, ctx, tol)
            moved_d, bound_d = _doubling(lambda c: sum_dirichlet(gen.coefficients(), k, c, tol=0), di)
            if not moved_d < bound_d:
                problems.append(f"{case} k={k} dirichlet doubling moved {mp.nstr(moved_d, 3)} >= {mp.nstr(bound_d, 3)}")
            lines.append(f"{case} k={k}: consistent={r.consistent} stirling digits {r.stirling_digits}")
    emit(2, not problems, "; ".join(lines) + ("; PROBLEMS: " + "; ".join(problems) if problems else ""))
    assert not problems


# ------------------------------------------------------------------ 3


def test_criterion_3_partial_sum_bound(emit):
    start = time.perf_counter()
    top = math.factorial(1001)
    numerator = sum(cn.stirling1_unsigned(n, 5) * (top // math.factorial(n + 1)) for n in range(5, 1001))
    exact = Fraction(numerator, top)
    # the same partial sum from the scaled-row engine at 30 digits (n = 5..1000)
    engine = sum_stirling_weighted(sq.inverse_power(1, shift=1), 5, CTX30.with_(max_terms=996), tol=0)
    elapsed = time.perf_counter() - start
    with mp.workdps(40):
        agree = abs(engine.partial_sum - frac(exact)) < mp.mpf(10) ** -28
    ok = exact < Fraction(8, 10) and agree and elapsed < 1.0
    emit(3, ok, f"sum_(n=5..1000) [n,5]/(n+1)! = {mp.nstr(frac(exact), 12)} < 0.8 (exact rational); "
                f"engine partial sum agrees: {agree}; {elapsed:.2f}s")
    assert ok


# ------------------------------------------------------------------ 4


def test_criterion_4_symmetry(emit):
    problems = []
    for q in range(4):
        for k in range(4):
            r = verify_symmetry(q, k, CTX30)
            if r.status not in ("verified", "agreed-within-tails") or r.abs_diff > r.lhs.error + r.rhs.error:
                problems.append(f"stirling_symmetry q={q} k={k}: {r.status}")
            if q == 0 and r.lhs.value != 1:
                problems.append(f"stirling_symmetry q=0 k={k}: lhs {r.lhs.value} is not exactly 1")
            if q == 0 and k == 0 and r.rhs.value != 1:
                problems.append("stirling_symmetry q=0 k=0: rhs is not exactly 1")
    for k, q in ((2, 3), (2, 4), (3, 4)):
        r = verify_symmetry(q, k, CTX30, form="adamchik")
        if r.status not in ("verified", "agreed-within-tails") or r.abs_diff > r.lhs.error + r.rhs.error:
            problems.append(f"adamchik_symmetry k={k} q={q}: {r.status}")
    emit(4, not problems, "stirling_symmetry on {0..3}^2 and adamchik_symmetry at (2,3),(2,4),(3,4) agree within tails; "
                          "q=0 row is exactly 1" + ("; " + "; ".join(problems) if problems else ""))
    assert not problems


# ------------------------------------------------------------------ 5


def _truncated_product(a, b, order):
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(order)]


def test_criterion_5_exact_sequences(emit):
    problems = []
    if not all(sum(cn.stirling1_row(n)) == math.factorial(n) for n in range(201)):
        problems.append("row sums")
    if not all(cn.stirling1_unsigned(n, 2) == math.factorial(n - 1) * cn.harmonic(n - 1) for n in range(1, 101)):
        problems.append("[n,2]")
    if not all(cn.derangement(n) == n * cn.derangement(n - 1) + (-1) ** n for n in range(1, 101)):
        problems.append("derangements")
    order = 21
    c_series = [cn.cauchy_first(n) / math.factorial(n) for n in range(order)]
    log1p_over_x = [Fraction((-1) ** m, m + 1) for m in range(order)]
    if _truncated_product(c_series, log1p_over_x, order) != [1] + [0] * (order - 1):
        problems.append("cauchy first")
    d_series = [cn.cauchy_second(n) / math.factorial(n) for n in range(order)]
    # -(1-x) ln(1-x)/x = 1 + sum_{m>=1} (1/(m+1) - 1/m) x^m
    other = [Fraction(1)] + [Fraction(1, m + 1) - Fraction(1, m) for m in range(1, order)]
    if _truncated_product(d_series, other, order) != [1] + [0] * (order - 1):
        problems.append("cauchy second")
    for r in (1, 2, 3):
        log_part = [Fraction(0)] + [Fraction(1, n) for n in range(1, order)]
        pole = [Fraction(math.comb(n + r - 1, r - 1)) for n in range(order)]
        expected = _truncated_product(log_part, pole, order)
        if [cn.hyperharmonic(n, r - 1) for n in range(order)] != expected:
            problems.append(f"hyperharmonic r={r}")
    emit(5, not problems, "row sums n<=200, [n,2] n<=100, derangement recurrence n<=100, "
                          "Cauchy products 1+O(x^21), hyperharmonic r<=3 to order 20, all exact"
         + ("; " + ", ".join(problems) if problems else ""))
    assert not problems


# ------------------------------------------------------------------ 6


def test_criterion_6_a_even_reconstruction(emit):
    ctx = EvaluationContext(target_digits=50)
    rows, missed = [], []
    for n in range(6):
        a, b, res = sqrt2_reconstruct(a_even_integral(n, ctx), 10**6, ctx)
        ok = res < mp.mpf(10) ** -30 and a.denominator <= 10**6 and b.denominator <= 10**6
        if n == 0:
            ok = ok and (a, b) == (Fraction(8, 3), Fraction(2, 3))
        rows.append(f"n={n}: a={a} b={b} residual={mp.nstr(res, 3)}")
        if not ok:
            missed.append(n)
    detail = "; ".join(rows)
    if missed:
        detail += (f"; no pair with denominators <= 10^6 fits n={missed}: the exact pairs have "
                   "denominator 2078505 (n=4) and 22309287 (n=5), see the larger-bound check")
    emit(6, not missed, detail)
    assert not missed, detail


def test_a_even_pairs_with_larger_denominators():
    """The A_n pairs themselves, recovered with a bound that admits them."""
    ctx = EvaluationContext(target_digits=50)
    known = {
        4: (Fraction(542744, 2078505), Fraction(65536, 2078505)),
        5: (Fraction(1570488, 7436429), Fraction(524288, 22309287)),
    }
    for n, pair in known.items():
        a, b, res = sqrt2_reconstruct(a_even_integral(n, ctx), 10**8, ctx)
        assert (a, b) == pair
        assert res < mp.mpf(10) ** -40


# ------------------------------------------------------------------ 7


def test_criterion_7_special_functions(emit):
    problems = []
    tol30 = mp.mpf(10) ** -30
    with mp.workdps(CTX30.dps):
        for n in range(1, 11):
            if abs(sf.trigamma_at_integer(n, CTX30) - sf.hurwitz_zeta(2, n, CTX30)) > tol30:
                problems.append(f"trigamma({n})")
        if abs(sf.nielsen_beta(2, CTX30) - (1 - mp.ln2)) > tol30:
            problems.append("beta(2)")
    tol = mp.mpf("1e-6")
    lhs = dirichlet_side(sq.harmonic_next(), 1, CTX30, tol)  # sum H_p / p^2, summed directly
    rhs = stirling_side(sq.trigamma_weights(CTX30), 1, CTX30, tol)  # sum [n,1] psi'(n) / n!
    with mp.workdps(CTX30.dps):
        diff = abs(lhs.value - rhs.value)
        digits = int(-mp.log10(diff / abs(lhs.value))) if diff else 30
        oracle = 2 * mp.zeta(3)
        if diff > lhs.error + rhs.error or digits < 5:
            problems.append(f"euler_sum_trigamma k=1: diff {mp.nstr(diff, 3)}, digits {digits}")
        if abs(lhs.value - oracle) > lhs.error or abs(rhs.value - oracle) > rhs.error:
            problems.append("euler_sum_trigamma k=1 sides miss 2 zeta(3)")
    report = verify("euler_sum_trigamma", {"k": 1}, CTX30)
    if report.status != "verified":
        problems.append(f"catalog report {report.status}")
    emit(7, not problems, f"trigamma = hurwitz(2, n) for n<=10 and beta(2) = 1 - ln2 at 30 digits; "
                          f"euler sum k=1 sides agree to {digits} digits within tails"
         + ("; " + "; ".join(problems) if problems else ""))
    assert not problems


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
