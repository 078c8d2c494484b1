"""Evaluate the catalogued closed forms and compare them with both sides.

    python3 demos/closed_forms.py [--digits 30]
"""
import argparse

import mpmath as mp

from stirling_dirichlet import EvaluationContext
from stirling_dirichlet.identity_catalog import closed_form_expr, verify

POINTS = [
    ("catalan_half", {"k": 0}),
    ("catalan_half", {"k": 1}),
    ("catalan_half", {"k": 2}),
    ("catalan_beta", {"k": 0}),
    ("catalan_log_integral", {"k": 1}),
    ("even_central", {"k": 0}),
    ("even_central", {"k": 1}),
    ("zeta_tail", {"k": 3}),
    ("binomial_r", {"k": 2, "r": 1}),
    ("binomial_r", {"k": 2, "r": 2}),
    ("aux_sum_2n3", {}),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--digits", type=int, default=30)
    args = ap.parse_args()
    ctx = EvaluationContext(target_digits=args.digits)
    for iid, params in POINTS:
        r = verify(iid, params, ctx)
        with mp.workdps(ctx.dps):
            print(f"{iid} {params}")
            print(f"    closed form  {closed_form_expr(iid, params)}")
            print(f"               = {mp.nstr(r.closed_form.value, args.digits)}")
            print(f"    lhs ({r.lhs.method:<10}) {mp.nstr(r.lhs.value, args.digits)}")
            print(f"    rhs ({r.rhs.method:<10}) {mp.nstr(r.rhs.value, args.digits)}")
            print(f"    {r.status}, {r.digits_agreed} digits")


if __name__ == "__main__":
    main()
