import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from stirling_dirichlet import EvaluationContext
from stirling_dirichlet import core_numbers as cn
from stirling_dirichlet.identity_catalog import sequences as sq
from stirling_dirichlet.series_engine import (
    CoefficientStream,
    Decay,
    ScaledStirlingRow,
    sum_dirichlet,
    sum_stirling_weighted,
)

from conftest import close

CTX = EvaluationContext(target_digits=30)


def zeta(s):
    with mp.workdps(60):
        return mp.zeta(s)


def test_dirichlet_ones_gives_zeta():
    r = sum_dirichlet(sq.ones(), 1, CTX, tol="1e-8")
    assert r.converged
    assert abs(r.value - zeta(2)) <= r.tail_estimate
    assert r.tail_estimate < 1e-8 * r.value


def test_dirichlet_zero_stream():
    r = sum_dirichlet(CoefficientStream.zero(), 3, CTX)
    assert r.value == 0 and r.tail_estimate == 0 and r.converged


def test_dirichlet_central_binomial_k0():
    # sum C(2p,p)/(4^p (p+1)) = 2
    r = sum_dirichlet(sq.central_quarter(), 0, CTX, tol="1e-6")
    assert r.converged
    assert abs(r.value - 2) <= r.tail_estimate


def test_dirichlet_fast_decay_to_working_precision():
    r = sum_dirichlet(sq.inverse_factorial(1), 0, CTX)
    with mp.workdps(60):
        expected = mp.e - 1  # sum 1/(p+1)!
    assert close(r.value, expected, 40)
    assert r.converged


def test_dirichlet_budget_exhausted():
    r = sum_dirichlet(sq.ones(), 1, CTX.with_(max_terms=100), tol="1e-20")
    assert not r.converged
    assert r.terms_used == 100
    assert r.partial_sum < r.value
    assert abs(r.value - zeta(2)) <= r.tail_estimate


def test_scaled_row_matches_exact_table():
    row = ScaledStirlingRow(6, bits=CTX.bits)
    with mp.workdps(CTX.dps):
        for n in range(301):
            if n:
                row.advance()
            fact = math.factorial(n)
            for k in range(7):
                exact = cn.stirling1_unsigned(n, k)
                approx = row[k] * fact
                if exact == 0:
                    assert approx == 0
                else:
                    assert abs(approx - exact) <= mp.mpf(10) ** (-27) * exact


def test_scaled_row_sums_to_one():
    row = ScaledStirlingRow(12, bits=200)
    with mp.workdps(60):
        for n in range(13):
            assert close(sum(row.values()), 1, 50)
            for v in row.values():
                assert 0 <= v <= 1
            row.advance()
    with pytest.raises(ValueError):
        row.advance_to(3)


def test_stirling_weighted_unit_sum():
    # w_n = 1/(n+1): k = 0 is the single term 1, k >= 1 crawls toward 1
    only = sum_stirling_weighted(sq.inverse_power(1, shift=1), 0, CTX)
    assert only.value == 1 and only.terms_used == 1 and only.converged
    crawl = sum_stirling_weighted(sq.inverse_power(1, shift=1), 1, CTX.with_(max_terms=2000), tol="1e-3")
    assert 0.5 < crawl.partial_sum < 1
    assert abs(crawl.value - 1) <= crawl.tail_estimate


def test_stirling_weighted_zeta3():
    # w_n = 1/n, k = 2: sum [n,2]/(n! n) = zeta(3)
    r = sum_stirling_weighted(sq.inverse_power(1), 2, CTX, tol="1e-6")
    assert r.converged
    assert abs(r.value - zeta(3)) <= r.tail_estimate
    assert abs(r.partial_sum - zeta(3)) > abs(r.value - zeta(3))


def test_stirling_weighted_finite_stream():
    weights = CoefficientStream(lambda start: iter([Fraction(1, n + 1) for n in range(start, 10)]),
                                Decay("finite"), "finite")
    r = sum_stirling_weighted(weights, 2, CTX)
    expected = sum(Fraction(cn.stirling1_unsigned(n, 2), math.factorial(n) * (n + 1)) for n in range(2, 10))
    assert close(r.value, expected)
    assert r.tail_estimate < 1e-40


def test_tail_honesty_doubling():
    cases = [
        lambda c: sum_dirichlet(sq.ones(), 2, c, tol=0),
        lambda c: sum_stirling_weighted(sq.inverse_power(1), 2, c, tol=0),
        lambda c: sum_stirling_weighted(sq.inverse_power(1, shift=1), 2, c, tol=0),
        lambda c: sum_dirichlet(sq.harmonic_next(), 2, c, tol=0),
    ]
    for build in cases:
        base = build(CTX.with_(max_terms=4096))
        doubled = build(CTX.with_(max_terms=8192))
        assert abs(doubled.value - base.value) < 2 * base.tail_estimate


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        sum_dirichlet(sq.ones(), -1, CTX)
    with pytest.raises(ValueError):
        sum_stirling_weighted(sq.ones(), -1, CTX)


def test_stream_basics():
    s = CoefficientStream.from_function(lambda p: p * p, name="squares")
    assert s.take(4) == [0, 1, 4, 9]
    assert s(5) == 25
    assert s.take(2, start=3) == [9, 16]
    starts_late = sq.inverse_power(1)
    with pytest.raises(ValueError):
        starts_late.iterate(0)
    with pytest.raises(ValueError):
        Decay("weird")


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 6), st.integers(1, 3))
def test_dirichlet_power_streams_property(q, k):
    # sum 1/(p+1)^(q+k+1) = zeta(q+k+1) from a stream of (p+1)^-q
    stream = CoefficientStream.from_function(lambda p: Fraction(1, (p + 1) ** q), Decay("power", float(q)))
    r = sum_dirichlet(stream, k, CTX, tol="1e-7")
    assert r.converged
    assert abs(r.value - zeta(q + k + 1)) <= r.tail_estimate
