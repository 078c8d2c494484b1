"""Command line interface: list, verify, seq, table and report-all.

Exit status is 0 unless a verification failed (1) or the command line was
unusable (2).  A series that runs out of terms is reported as
budget-exhausted and does not change the exit status.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction

import mpmath as mp

from . import core_numbers as cn
from .context import (
    EvaluationContext,
    InvalidParameters,
    NoClosedForm,
    PrecisionUnreachable,
    QuadratureNonconvergent,
    TableBudgetExceeded,
)
from .identity_catalog import list_identities, report_all, summarize, verify

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

class UsageError(Exception):
    pass


def _count(text: str) -> int:
    """Integers written as 1000000, 1e6 or 10**6."""
    text = text.strip()
    try:
        if "**" in text:
            base, exp = text.split("**", 1)
            return int(base) ** int(exp)
        value = Decimal(text)
    except (ValueError, InvalidOperation):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _number(value, digits: int) -> str:
    if value is None:
        return None
    if mp.isinf(value) or mp.isnan(value):
        return str(value)
    return mp.nstr(value, digits)


def _param_json(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return v


def _error_text(value) -> str:
    return "inf" if mp.isinf(value) else mp.nstr(value, 3)


def report_dict(report, index: int | None = None) -> dict:
    """The JSON object for a report, keys in canonical order."""
    digits = report.target_digits
    with mp.workdps(digits + 10):
        out = {} if index is None else {"index": index}
        out.update({
            "id": report.id,
            "eq": report.eq,
            "params": {k: _param_json(v) for k, v in report.params.items()},
            "lhs": _number(report.lhs.value, digits),
            "rhs": _number(report.rhs.value, digits),
            "closed_form": None if report.closed_form is None else _number(report.closed_form.value, digits),
            "abs_diff": _error_text(report.abs_diff),
            "digits_agreed": report.digits_agreed,
            "terms_used": report.terms_used,
            "tail_estimate": _error_text(report.tail_estimate),
            "status": report.status,
        })
    return out


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=True, separators=(", ", ": "))


def _describe_side(label, side, digits):
    if side.method == "series":
        how = f"series, {side.terms_used} terms" + ("" if side.converged else ", budget exhausted")
    else:
        how = side.method
    return f"  {label:<12} {_number(side.value, digits):<{digits + 8}} +- {_error_text(side.error):<9} {how}"


def format_report(report) -> str:
    digits = report.target_digits
    params = " ".join(f"{k}={v}" for k, v in report.params.items())
    with mp.workdps(digits + 10):
        lines = [f"{report.id} {report.eq}  {params}  [tier {report.tier}]".rstrip(),
                 _describe_side("lhs", report.lhs, digits),
                 _describe_side("rhs", report.rhs, digits)]
        if report.closed_form is not None:
            lines.append(f"  {'closed form':<12} {_number(report.closed_form.value, digits):<{digits + 8}}"
                         f" = {report.closed_form_text}")
        lines.append(f"  {'|lhs - rhs|':<12} {_error_text(report.abs_diff)}   digits agreed {report.digits_agreed}"
                     f" (lhs vs rhs {report.lhs_rhs_digits})")
        for note in report.notes:
            lines.append(f"  note: {note}")
        lines.append(f"  {'status':<12} {report.status}")
    return "\n".join(lines)


def _context(args) -> EvaluationContext:
    if args.digits < 6:
        raise UsageError("--digits must be >= 6")
    if args.max_terms < 10:
        raise UsageError("--max-terms must be >= 10")
    if args.quad_level < 1:
        raise UsageError("--quad-level must be >= 1")
    return EvaluationContext(target_digits=args.digits, max_terms=args.max_terms,
                             max_quadrature_level=args.quad_level)


def _cmd_list(args, out) -> int:
    items = list_identities()
    if args.output == "json":
        for s in items:
            out.write(dumps({"id": s.id, "eq": s.eq, "parameters": s.parameters,
                             "predicate": s.predicate, "tier": s.tier,
                             "specials": list(s.specials)}) + "\n")
        return EXIT_OK
    for s in items:
        params = ", ".join(f"{k}:{v}" for k, v in s.parameters.items()) or "-"
        specials = f"  specials {' '.join(s.specials)}" if s.specials else ""
        out.write(f"{s.id:<24} {s.eq:<10} {params:<22} {s.predicate:<22} {s.tier}{specials}\n")
        out.write(f"{'':<24}   {s.lhs}\n{'':<24} = {s.rhs}\n")
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    ctx = _context(args)
    params = {name: getattr(args, name) for name in ("k", "q", "r", "a") if getattr(args, name) is not None}
    report = verify(args.id, params, ctx)
    if args.output == "json":
        out.write(dumps(report_dict(report)) + "\n")
    else:
        out.write(format_report(report) + "\n")
    return EXIT_FAILED if report.status == "failed" else EXIT_OK


_SEQUENCES = {
    "harmonic": lambda n, a: cn.harmonic(n),
    "hyperharmonic": lambda n, a: cn.hyperharmonic(n, int(a.r if a.r is not None else 0)),
    "cauchy_first": lambda n, a: cn.cauchy_first(n),
    "cauchy_second": lambda n, a: cn.cauchy_second(n),
    "derangement": lambda n, a: cn.derangement(n),
    "catalan": lambda n, a: cn.catalan(n),
    "central_binomial": lambda n, a: cn.binomial(2 * n, n),
    "binomial_general": lambda n, a: cn.binomial_general(a.r if a.r is not None else Fraction(1, 2), n),
    "stirling1_column": lambda n, a: cn.stirling1_unsigned(n, a.k if a.k is not None else 1),
}


def _cmd_seq(args, out) -> int:
    if args.count < 0:
        raise UsageError("--count must be >= 0")
    if args.name == "hyperharmonic" and args.r is not None and (args.r.denominator != 1 or args.r < 0):
        raise UsageError("hyperharmonic needs an integer --r >= 0")
    values = [_SEQUENCES[args.name](n, args) for n in range(args.start, args.start + args.count)]
    if args.output == "json":
        out.write(dumps([str(v) for v in values]) + "\n")
    else:
        out.write(", ".join(str(v) for v in values) + "\n")
    return EXIT_OK


def _cmd_table(args, out) -> int:
    if args.n < 0 or (args.k is not None and args.k < 0):
        raise UsageError("--n and --k must be >= 0")
    if args.k is not None:
        value = cn.stirling1_unsigned(args.n, args.k)
        out.write((dumps(str(value)) if args.output == "json" else str(value)) + "\n")
        return EXIT_OK
    rows = [cn.stirling1_row(m) for m in range(args.n + 1)]
    if args.output == "json":
        out.write(dumps([[str(v) for v in row] for row in rows]) + "\n")
    else:
        for m, row in enumerate(rows):
            out.write(f"{m:>3}: " + " ".join(str(v) for v in row) + "\n")
    return EXIT_OK


def _cmd_report_all(args, out) -> int:
    ctx = _context(args)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    reports = []
    for index, report in report_all(ctx, jobs=args.jobs, ids=args.ids):
        reports.append(report)
        if args.output == "json":
            out.write(dumps(report_dict(report, index)) + "\n")
        else:
            params = " ".join(f"{k}={v}" for k, v in report.params.items())
            out.write(f"[{index:>3}] {report.id:<24} {report.eq:<10} {params:<14} {report.status:<20} "
                      f"digits {report.digits_agreed:>2}  tail {_error_text(report.tail_estimate)}\n")
        out.flush()
    counts = summarize(reports)
    if args.output != "json":
        out.write("  ".join(f"{k}: {v}" for k, v in counts.items()) + f"  total: {len(reports)}\n")
    return EXIT_FAILED if counts["failed"] else EXIT_OK


def _add_numeric(p):
    p.add_argument("--digits", type=int, default=30, help="target decimal digits (default 30)")
    p.add_argument("--max-terms", type=_count, default=10**6, help="series term budget (default 10**6)")
    p.add_argument("--quad-level", type=int, default=12, help="tanh-sinh level cap (default 12)")
    p.add_argument("--output", choices=("human", "json"), default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stirling-dirichlet",
        description="Verify Dirichlet-series identities with Stirling numbers of the first kind.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list the registered identities")
    p.add_argument("--output", choices=("human", "json"), default="human")

    p = sub.add_parser("verify", help="evaluate both sides of one identity")
    p.add_argument("--id", required=True, help="identity id, or <id>_special")
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=_rational)
    p.add_argument("--a", type=_rational)
    _add_numeric(p)

    p = sub.add_parser("seq", help="print terms of an exact sequence")
    p.add_argument("name", choices=sorted(_SEQUENCES))
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--r", type=_rational, help="parameter for hyperharmonic / binomial_general")
    p.add_argument("--k", type=int, help="column for stirling1_column")
    p.add_argument("--output", choices=("human", "json"), default="human")

    p = sub.add_parser("table", help="print Stirling numbers of the first kind")
    p.add_argument("kind", choices=("stirling1",))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--output", choices=("human", "json"), default="human")

    p = sub.add_parser("report-all", help="verify every identity on its default grid")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--ids", nargs="+", help="restrict to these identity ids")
    _add_numeric(p)
    return parser


_COMMANDS = {
    "list": _cmd_list,
    "verify": _cmd_verify,
    "seq": _cmd_seq,
    "table": _cmd_table,
    "report-all": _cmd_report_all,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out)
    except (UsageError, InvalidParameters, NoClosedForm) as exc:
        err.write(f"stirling-dirichlet: error: {exc}\n")
        return EXIT_USAGE
    except (TableBudgetExceeded, PrecisionUnreachable, QuadratureNonconvergent) as exc:
        err.write(f"stirling-dirichlet: numerical limit: {exc}\n")
        return EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
