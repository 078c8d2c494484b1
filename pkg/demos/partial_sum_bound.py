"""Exact partial sum of [n,5]/(n+1)! for n = 5..1000, and how far the tail goes."""
from fractions import Fraction
from math import factorial

import mpmath as mp

from stirling_dirichlet import EvaluationContext
from stirling_dirichlet import core_numbers as cn
from stirling_dirichlet.identity_catalog import verify

exact = sum(Fraction(cn.stirling1_unsigned(n, 5), factorial(n + 1)) for n in range(5, 1001))
print(f"sum_(n=5..1000) [n,5]/(n+1)! = {mp.nstr(mp.mpf(exact.numerator) / exact.denominator, 20)}")
print(f"below 0.8: {exact < Fraction(4, 5)}")

# the full series is 1; most of the remaining mass sits far out
r = verify("unit_sum", {"k": 5}, EvaluationContext(target_digits=20, max_terms=10**6))
print(f"full series with 10**6 terms and tail model: {mp.nstr(r.lhs.value, 8)} "
      f"+- {mp.nstr(r.lhs.error, 3)}  ({r.status})")
