"""Look for rationals a, b with A_n = a - b sqrt(2), n = 0..7.

A_n is the integral behind the even central binomial series, computed by
quadrature at 60 digits.  The first pass uses denominators up to 10**6,
the second up to 10**9.
"""
import mpmath as mp

from stirling_dirichlet import EvaluationContext
from stirling_dirichlet.series_engine import a_even_integral, sqrt2_reconstruct

ctx = EvaluationContext(target_digits=60)

for bound in (10**6, 10**9):
    print(f"denominators <= {bound}")
    for n in range(8):
        v = a_even_integral(n, ctx)
        a, b, res = sqrt2_reconstruct(v, bound, ctx)
        mark = "" if res < mp.mpf(10) ** -30 else "   (no fit)"
        print(f"  n={n}  a={a}  b={b}  residual {mp.nstr(res, 3)}{mark}")
