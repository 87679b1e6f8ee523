"""Command-line front end.

Exit status: 0 on success, 1 when a check fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import errata
from .checks import SUITES, run_suite
from .core import GridSpec, MultiPolynomial, Polynomial, format_rational, parse_rational
from .differences import DifferenceKind, DifferenceRequest, divided_difference, nth_difference
from .error import DegenerateInput, empirical_order, halving_steps, residual_polynomial
from .fit import StencilOutOfRange, TooFewPoints, backward_sequence, compare_forward_prediction, fit_damped_sine
from .table import build_table


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_rational(text):
    value = _rational(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text}")
    return value


def _non_negative_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def _poly(text):
    try:
        return Polynomial.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _kind(text):
    try:
        return DifferenceKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


CHECK_NAMES = list(SUITES) + ["errata", "all"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polydiff", description="Exact finite and divided differences of polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="symmetric difference table of x^n")
    p.add_argument("--power", type=_positive_int, default=10)
    p.add_argument("--range", type=_positive_int, default=10, dest="half_range", help="half range N (rows -N..N)")
    p.add_argument("--step", type=_positive_rational, default=parse_rational("1"))
    p.add_argument("--format", choices=("md", "csv", "json"), default="csv")

    p = sub.add_parser("diff", help="one finite (or divided) difference")
    p.add_argument("--kind", type=_kind, required=True, help="forward, backward, central-half or central-full")
    p.add_argument("--order", type=_non_negative_int, required=True)
    p.add_argument("--step", type=_positive_rational, default=parse_rational("1"))
    p.add_argument("--at", type=_rational, default=parse_rational("0"))
    p.add_argument("--poly", type=_poly, required=True, help="coefficients c0,c1,... lowest degree first")
    p.add_argument("--divided", action="store_true", help="divide by the step (span) to the order")

    p = sub.add_parser("check", help="run a seeded verification suite")
    p.add_argument("suite", choices=CHECK_NAMES)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("error-order", help="residual of the forward divided difference of x^n")
    p.add_argument("--power", type=_positive_int, required=True)
    p.add_argument("--order", type=_positive_int, required=True)
    p.add_argument("--step", type=_positive_rational, default=parse_rational("1"))

    p = sub.add_parser("fit", help="damped-sine fit of a table row")
    p.add_argument("--power", type=_positive_int, default=10)
    p.add_argument("--at", type=int, default=-10, help="row index i")
    p.add_argument("--range", type=_positive_int, default=10, dest="half_range")
    p.add_argument("--step", type=_positive_rational, default=parse_rational("1"))
    p.add_argument("--emit-json", action="store_true")
    return parser


def cmd_table(args, out):
    t = build_table(args.power, GridSpec(args.step, args.half_range))
    out.write({"md": t.to_markdown, "csv": t.to_csv, "json": t.to_json}[args.format]())
    return 0


def cmd_diff(args, out):
    req = DifferenceRequest(args.kind, args.order, args.step, args.at)
    value = divided_difference(args.poly, req) if args.divided else nth_difference(args.poly, req)
    out.write(format_rational(value) + "\n")
    return 0


def _errata_lines():
    lines = []
    stated, mirror = errata.sign_law()
    lines += [stated.summary(), mirror.summary()]
    stated, alt = errata.central_coefficient()
    lines += [stated.summary(), alt.summary()]
    lines += ["  " + r.line() for r in stated.rows[:3]]
    m = MultiPolynomial({(2, 0): 1, (0, 2): 1}, arity=2)
    for steps in ({0: 1, 1: 1}, {0: parse_rational("1/2"), 1: 3}):
        prod, summ = errata.product_vs_diagonal(m, steps)
        shown = ", ".join(f"{k}={format_rational(v)}" for k, v in steps.items())
        lines.append(f"u^2+v^2 steps {shown}:")
        lines += ["  product " + r.line() for r in prod.rows]
        lines += ["  sum     " + r.line() for r in summ.rows]
    return lines


def cmd_check(args, out):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        if name == "errata":
            continue
        res = run_suite(name, args.seed)
        out.write("\n".join(res.lines()) + "\n")
        if not res.passed:
            status = 1
    if args.suite in ("errata", "all"):
        out.write("\n".join(_errata_lines()) + "\n")
    return status


def cmd_error_order(args, out):
    if args.order > args.power:
        raise UsageError("--order must not exceed --power")
    rep = residual_polynomial(args.power, args.order, args.step)
    d = rep.actual_degree
    out.write(f"residual = {rep.residual}\n")
    out.write(f"residual_coefficients = {rep.residual.format()}\n")
    out.write(f"actual_degree = {'zero' if d is None else d}\n")
    out.write(f"bound_degree = {rep.paper_bound_degree}\n")
    out.write(f"tight_bound_degree = {rep.tight_bound_degree}\n")
    ok = rep.within(rep.tight_bound_degree if args.order < args.power else 0) and rep.within(rep.paper_bound_degree)
    n, k = args.power, args.order
    if n >= k + 1:
        exact = float(Polynomial.monomial(n).derivative(k)(1))
        for kind in (DifferenceKind.FORWARD, DifferenceKind.CENTRAL_HALF):
            try:
                slope = empirical_order(lambda x: x**n, k, 1.0, halving_steps(2, 8 if k > 1 else 10), exact=exact, kind=kind)
                out.write(f"empirical_order_{kind.value} = {slope:.4f}\n")
            except DegenerateInput:
                out.write(f"empirical_order_{kind.value} = exact\n")
    out.write(f"status = {'PASS' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def cmd_fit(args, out):
    try:
        seq = backward_sequence(args.power, args.at, GridSpec(args.step, args.half_range))
        fit = fit_damped_sine(seq)
    except (StencilOutOfRange, TooFewPoints) as exc:
        raise UsageError(str(exc)) from None
    except DegenerateInput as exc:
        out.write(f"degenerate input: {exc}\n")
        return 1
    model = fit.model(range(len(seq)))
    cmp = compare_forward_prediction(fit, seq)
    if args.emit_json:
        doc = {
            "power": args.power,
            "at": args.at,
            "fit": fit.as_dict(),
            "columns": {
                "k": list(range(len(seq))),
                "data": [format_rational(v) for v in seq.exact],
                "model": [repr(float(m)) for m in model],
            },
            "forward_prediction": {
                "predicted": [repr(p) for p in cmp.predicted],
                "exact": [format_rational(v) for v in cmp.exact],
                "sign_disagreements": cmp.disagreements,
            },
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for key, value in fit.as_dict().items():
            out.write(f"# {key} = {value}\n")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "data", "model"])
        for k, (v, m) in enumerate(zip(seq.exact, model)):
            w.writerow([k, format_rational(v), repr(float(m))])
        out.write(buf.getvalue())
    return 0


class UsageError(Exception):
    pass


COMMANDS = {
    "table": cmd_table,
    "diff": cmd_diff,
    "check": cmd_check,
    "error-order": cmd_error_order,
    "fit": cmd_fit,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"polydiff {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
