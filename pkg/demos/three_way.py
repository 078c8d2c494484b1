"""Sum a_p/(p+1)^(k+1) three ways for a few generating functions.

The direct Dirichlet sum, the weighted Stirling series and the log-kernel
integral are computed independently; the table shows each value with its
error estimate and whether all three pairs sit inside their combined error.
"""
import sys

import mpmath as mp

from stirling_dirichlet import EvaluationContext, InvalidParameters
from stirling_dirichlet.identity_catalog import CASES, three_way

ctx = EvaluationContext(target_digits=30, max_terms=10**5)
ks = [int(a) for a in sys.argv[1:]] or [0, 1, 2]

for name in CASES:
    for k in ks:
        try:
            r = three_way(name, k, ctx)
        except InvalidParameters as exc:
            print(f"{name:<12} k={k}  skipped: {exc}")
            continue
        with mp.workdps(ctx.dps):
            print(f"{name:<12} k={k}  consistent={r.consistent}  stirling vs integral {r.stirling_digits} digits")
            for label, side in (("dirichlet", r.dirichlet), ("stirling", r.stirling), ("integral", r.integral)):
                extra = f"  ({side.terms_used} terms)" if side.is_series else ""
                print(f"    {label:<10} {mp.nstr(side.value, 25):<30} +- {mp.nstr(side.error, 3)}{extra}")
