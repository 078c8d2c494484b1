from fractions import Fraction

import mpmath as mp
import pytest

from stirling_dirichlet import EvaluationContext


@pytest.fixture
def ctx():
    return EvaluationContext(target_digits=30)


def _real(v):
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    return mp.mpf(v)


def close(a, b, digits=28):
    """Relative (or absolute near zero) agreement to ``digits`` digits."""
    with mp.workdps(digits + 20):
        a, b = _real(a), _real(b)
        scale = max(abs(a), abs(b), mp.mpf(1))
        return abs(a - b) <= mp.mpf(10) ** (-digits) * scale
