import math
from fractions import Fraction

import mpmath as mp
import pytest

from stirling_dirichlet import EvaluationContext, QuadratureNonconvergent
from stirling_dirichlet.series_engine import integrate_log_kernel, integrate_weighted, log_x, log_y, tanh_sinh

from conftest import close

CTX = EvaluationContext(target_digits=30)


def test_weighted_examples():
    assert close(integrate_weighted(lambda x, y: 1 / y, 3, CTX), Fraction(1, 3))
    # -ln(1-x)(1-x)^-(r+1) against weight n > r gives 1/(n-r)^2
    for r in range(3):
        for n in range(r + 1, r + 4):
            value = integrate_weighted(lambda x, y, r=r: -log_y(x, y) * y ** (-(r + 1)), n, CTX)
            assert close(value, Fraction(1, (n - r) ** 2))
    # ln^q(1-x) at weight n: (-1)^q q!/(n+1)^(q+1)
    assert close(integrate_weighted(lambda x, y: log_y(x, y) ** 2, 1, CTX), Fraction(1, 4))
    assert close(integrate_weighted(lambda x, y: log_y(x, y) ** 3, 2, CTX), Fraction(-6, 81))


def test_beta_integral_identity():
    for p in range(1, 6):
        for n in range(9):
            value = integrate_weighted(lambda x, y, p=p: x ** (p - 1), n, CTX)
            expected = Fraction(math.factorial(n), math.prod(range(p, p + n + 1)))
            assert close(value, expected)


def test_frullani_weights():
    for n in range(11):
        value = integrate_weighted(lambda x, y: -x / log_y(x, y), n, CTX)
        with mp.workdps(50):
            assert close(value, mp.log(mp.mpf(n + 2) / (n + 1)))


def test_log_kernel_examples():
    catalan_shift = lambda x, y: 2 / (1 + mp.sqrt(y))
    with mp.workdps(50):
        assert close(integrate_log_kernel(catalan_shift, 0, CTX), 4 * (1 - mp.ln2))
        assert close(integrate_log_kernel(catalan_shift, 1, CTX), 8 - 8 * mp.ln2 + 4 * mp.ln2**2 - mp.pi**2 / 3)
    assert close(integrate_log_kernel(lambda x, y: mp.mpf(1), 2, CTX), 1)
    for k in range(6):
        # f = 1/(1-x) gives zeta(k+1) for k >= 1
        if k:
            with mp.workdps(50):
                assert close(integrate_log_kernel(lambda x, y: 1 / y, k, CTX), mp.zeta(k + 1))
        assert close(integrate_log_kernel(lambda x, y: mp.mpf(1), k, CTX), 1)


def test_endpoint_helpers():
    with mp.workdps(40):
        tiny = mp.mpf(10) ** -30
        assert close(log_y(1 - tiny, tiny), mp.log(tiny))
        assert close(log_x(tiny, 1 - tiny), mp.log(tiny))
        assert abs(log_x(1 - tiny, tiny) + tiny) < mp.mpf(10) ** -55


def test_error_estimate_and_level_cap():
    result = tanh_sinh(lambda x, y: mp.sqrt(x), CTX)
    assert close(result.value, Fraction(2, 3))
    assert result.error < mp.mpf(10) ** -30
    with pytest.raises(QuadratureNonconvergent):
        tanh_sinh(lambda x, y: mp.sin(1 / x), EvaluationContext(target_digits=30, max_quadrature_level=4))
    with pytest.raises(ValueError):
        integrate_weighted(lambda x, y: 1, -1, CTX)
    with pytest.raises(ValueError):
        integrate_log_kernel(lambda x, y: 1, -1, CTX)


def test_high_order_log_kernel_is_full_precision():
    # regression: the 1/k! prefactor must be formed at working precision
    with mp.workdps(60):
        for k in (3, 5, 8):
            assert close(integrate_log_kernel(lambda x, y: 1 / y, k, CTX), mp.zeta(k + 1), digits=29)
