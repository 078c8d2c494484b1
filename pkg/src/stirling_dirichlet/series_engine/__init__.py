"""Summation and quadrature machinery for Dirichlet and Stirling series."""

from .quadrature import (
    Integrand,
    QuadratureResult,
    integrate_log_kernel,
    integrate_weighted,
    log_x,
    log_y,
    tanh_sinh,
)
from .special_values import (
    a_even_integral,
    even_central_gf,
    exp_tail,
    scaled_exp_tail,
    sqrt2_reconstruct,
)
from .streams import CoefficientStream, Decay
from .summation import ScaledStirlingRow, SumResult, sum_dirichlet, sum_stirling_weighted

__all__ = [
    "CoefficientStream",
    "Decay",
    "Integrand",
    "QuadratureResult",
    "ScaledStirlingRow",
    "SumResult",
    "a_even_integral",
    "even_central_gf",
    "exp_tail",
    "integrate_log_kernel",
    "integrate_weighted",
    "log_x",
    "log_y",
    "scaled_exp_tail",
    "sqrt2_reconstruct",
    "sum_dirichlet",
    "sum_stirling_weighted",
    "tanh_sinh",
]
