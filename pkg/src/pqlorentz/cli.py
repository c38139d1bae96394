"""Command-line front end for the experiment tables.

Exit codes: 0 success, 1 invalid arguments, 2 hypothesis flags false under
``--strict-hypotheses``, 3 evaluation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .bounds import bound_report
from .harness import (
    convergence_table,
    exact_order_audit,
    iterate_table,
    simultaneous_table,
    voronovskaja_table,
)
from .norms import EvaluationError
from .pqcore import ParameterError, PQParams
from .scalars import fmt17
from .series import DomainError, catalog

EXIT_OK, EXIT_ARGS, EXIT_HYPOTHESIS, EXIT_EVAL = 0, 1, 2, 3

# hypothesis flag that gates each subcommand
GATE = {
    "converge": "upper",
    "voronovskaja": "voronovskaja",
    "simultaneous": "simultaneous_upper",
    "iterate": "iterates",
    "audit": "lower",
    "constants": "upper",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=_rational, default=Fraction(11, 10))
    common.add_argument("--q", type=_rational, default=Fraction(6, 5))
    common.add_argument("--f", default="exp", help="catalog name, e.g. exp, geometric:4, monomial:2")
    common.add_argument("--r", type=_rational, default=Fraction(1))
    common.add_argument("--rstar", type=_rational, default=Fraction(3, 2))
    common.add_argument("--r1", type=_rational, default=Fraction(2))
    common.add_argument("--n-start", type=int, default=5)
    common.add_argument("--n-end", type=int, default=40)
    common.add_argument("--n", type=_int_list, default=None, help="explicit comma-separated degrees")
    common.add_argument("--K", type=int, default=None, help="series truncation (default n_end + 64)")
    common.add_argument("--m", type=int, default=1, help="derivative order or iterate count")
    common.add_argument("--schedule", choices=["const", "linear"], default="const")
    common.add_argument("--grid", type=int, default=None)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", default=None)
    common.add_argument("--burnin", type=int, default=3)
    common.add_argument("--ratio-cap", type=float, default=100.0)
    common.add_argument("--of", choices=["converge", "simultaneous"], default="converge")
    common.add_argument("--strict-hypotheses", action="store_true")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", default=True)
    mode.add_argument("--float", dest="exact", action="store_false")

    parser = _Parser(prog="pqlorentz", description="(p,q)-Lorentz operator experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("converge", "error of L_n f against p^n/[n]"),
        ("voronovskaja", "Voronovskaja residual against p^(2n)/[n]^2"),
        ("simultaneous", "error of the m-th derivative"),
        ("iterate", "error of the iterates L_n^(m_n)"),
        ("audit", "exact-order audit of a rate table"),
        ("constants", "theorem constants at n = n_end"),
    ]:
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def _setup(args):
    params = PQParams(args.p, args.q, exact=args.exact)
    ns = args.n if args.n else list(range(args.n_start, args.n_end + 1))
    if not ns or min(ns) < 1:
        raise UsageError("degrees must be >= 1")
    K = args.K if args.K is not None else max(ns) + 64
    f = catalog(args.f, K, exact=args.exact)
    r, r1, rstar = args.r, args.r1, args.rstar
    if not args.exact:
        r, r1, rstar = float(r), float(r1), float(rstar)
    return params, ns, f, r, r1, rstar


def _csv_rows(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def run(args) -> tuple[str, bool]:
    """Produce the output text and whether the gating hypothesis holds."""
    params, ns, f, r, r1, rstar = _setup(args)
    cmd = args.command
    if cmd == "converge":
        table = convergence_table(f, r, r1, ns, params, args.grid)
    elif cmd == "voronovskaja":
        table = voronovskaja_table(f, r, r1, ns, params, args.grid)
    elif cmd == "simultaneous":
        table = simultaneous_table(f, args.m, r, rstar, r1, ns, params, args.grid)
    elif cmd == "iterate":
        schedule = [(n, n if args.schedule == "linear" else args.m) for n in ns]
        table = iterate_table(f, r, r1, schedule, params, args.grid)
    elif cmd == "audit":
        if args.of == "simultaneous":
            table = simultaneous_table(f, args.m, r, rstar, r1, ns, params, args.grid)
        else:
            table = convergence_table(f, r, r1, ns, params, args.grid)
        result = exact_order_audit(table, args.burnin, args.ratio_cap)
        ok = table.meta["flags"].get(GATE["audit"] if args.of == "converge" else "simultaneous_order", False)
        fields = {
            "lo": float(result.lo),
            "hi": float(result.hi),
            "ratio": float(result.ratio),
            "passed": result.passed,
            "rows_used": result.rows_used,
        }
        if args.format == "json":
            text = json.dumps({"audit": fields, "table": table.to_dict()}, sort_keys=True, indent=2) + "\n"
        else:
            header = list(fields)
            values = [v if isinstance(v, int) and not isinstance(v, bool) else fmt17(v) for v in fields.values()]
            text = _csv_rows([header, values])
        return text, ok
    elif cmd == "constants":
        report = bound_report(f, max(ns), params, r, r1, rstar, args.m, args.m)
        ok = report.hypothesis_flags[GATE[cmd]]
        if args.format == "json":
            return report.to_json() + "\n", ok
        d = report.to_dict()
        rows = [["name", "value"]]
        for key in ("n", "rate_unit", "M", "Q", "Q_statement", "simultaneous_factor", "iterate_bound"):
            v = d[key]
            rows.append([key, "" if v is None else (v if isinstance(v, int) else fmt17(v))])
        for key, v in sorted(report.hypothesis_flags.items()):
            rows.append([f"flag:{key}", fmt17(v)])
        return _csv_rows(rows), ok
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown command {cmd}")
    ok = table.meta["flags"].get(GATE[cmd], False)
    text = table.to_csv() if args.format == "csv" else table.to_json() + "\n"
    return text, ok


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text, ok = run(args)
    except (UsageError, ParameterError, ValueError) as exc:
        if isinstance(exc, DomainError):
            print(f"pqlorentz: evaluation failed: {exc}", file=sys.stderr)
            return EXIT_EVAL
        print(f"pqlorentz: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (EvaluationError, ArithmeticError, OverflowError) as exc:
        print(f"pqlorentz: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_EVAL
    if args.strict_hypotheses and not ok:
        print(f"pqlorentz: hypothesis {GATE[args.command]!r} does not hold for these radii", file=sys.stderr)
        return EXIT_HYPOTHESIS
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
