"""Command-line front end: ``meanorder <command> ...``.

Exit codes: 0 success/pass, 1 check failed, 2 bad input (usage, parse or
domain error), 3 evaluation failure (e.g. non-convergent iteration).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict

from .errors import MeanError, NonConvergence
from .expr import Gini, Invariant, format_mean, parse_mean
from .grid import GridSpec
from .invariant import gauss_iterate
from .evaluate import eval_mean
from .orders import classify_power_growth, gini_order, known_order, sample_phi
from .theory import dl_leq, pales_leq
from .verify import verify_invariance_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3

DEFAULT_GINI_PARAMS = "-2,-1,-0.5,0,0.5,1,2"


class _UsageError(Exception):
    pass


def _num(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return _num(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _dump_json(obj, out):
    json.dump(_jsonable(obj), out, indent=2, sort_keys=True, allow_nan=False)
    out.write("\n")


def _parse_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise _UsageError(f"not a comma-separated number list: {text!r}") from None


def _grid(args):
    try:
        return GridSpec(
            u_start=args.u_start, u_end=args.u_end, points=args.points,
            windows=args.windows, probes=args.probes,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _expr(text):
    return parse_mean(text)


# --- commands -----------------------------------------------------------------

def cmd_eval(args, out):
    expr = _expr(args.expr)
    value = eval_mean(expr, args.x, args.y)
    if args.format == "json":
        _dump_json({"expr": format_mean(expr), "x": args.x, "y": args.y, "value": value}, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["expr", "x", "y", "value"])
        w.writerow([format_mean(expr), _num(args.x), _num(args.y), _num(value)])
    else:
        out.write(f"{value:.17g}\n")
    return EXIT_OK


def cmd_order(args, out):
    expr = _expr(args.expr)
    grid = _grid(args).resolve(expr)
    if args.format == "csv":
        u, phi = sample_phi(expr, grid)
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["u", "phi"])
        for a, b in zip(u, phi):
            w.writerow([_num(a), _num(b)])
        return EXIT_OK
    report = classify_power_growth(expr, grid)
    est = report.estimate
    if args.format == "json":
        _dump_json({"expr": format_mean(expr), "grid": asdict(grid), "known_order": known_order(expr),
                    **report.to_dict()}, out)
        return EXIT_OK
    lines = [
        f"expr      {format_mean(expr)}",
        f"lower     {_num(est.lower)}  (fit residual {_num(est.fit_residual_lower)})",
        f"upper     {_num(est.upper)}  (fit residual {_num(est.fit_residual_upper)})",
        f"gpg       {_num(report.is_gpg)}  (gap {_num(report.gpg_gap)})",
        f"order     {_num(report.order)}",
        f"pg        {_num(report.is_pg)}  (constant spread {_num(report.constant_spread)})",
        f"constant  {_num(report.constant)}",
        f"known     {_num(known_order(expr))}",
    ]
    if est.clamped:
        lines.append(f"note      clamped from raw ({_num(est.raw_lower)}, {_num(est.raw_upper)})")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_invariant(args, out):
    M, N = _expr(args.M), _expr(args.N)
    tol = args.tol if args.tol is not None else 1e-14
    res = gauss_iterate(M, N, args.x, args.y, tol=tol)
    if args.format == "json":
        _dump_json({"expr": format_mean(Invariant(M, N)), "x": args.x, "y": args.y, **asdict(res)}, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["value", "iterations", "final_gap"])
        w.writerow([_num(res.value), res.iterations, _num(res.final_gap)])
    else:
        out.write(f"value       {res.value:.17g}\niterations  {res.iterations}\n"
                  f"final_gap   {_num(res.final_gap)}\n")
    return EXIT_OK


def cmd_verify(args, out):
    M, N = _expr(args.M), _expr(args.N)
    tol = args.tol if args.tol is not None else 0.02
    report = verify_invariance_order(M, N, _grid(args), tol=tol, seed=args.seed)
    if args.format == "json":
        _dump_json(report.to_dict(), out)
    else:
        o = report.orders
        lines = [
            f"M         {report.M}  orders ({_num(o['M']['lower'])}, {_num(o['M']['upper'])})",
            f"N         {report.N}  orders ({_num(o['N']['lower'])}, {_num(o['N']['upper'])})",
            f"K         orders ({_num(o['K']['lower'])}, {_num(o['K']['upper'])})",
            f"mode      {report.mode}",
        ]
        if report.prediction is not None:
            lines.append(f"predicted {_num(report.prediction)}")
        if report.bounds is not None:
            lines.append(f"bounds    lo(K) >= {_num(report.bounds[0])}, uo(K) <= {_num(report.bounds[1])}")
        lines += [
            f"result    {'pass' if report.passed else 'fail'}  (margin {_num(report.margin)}, tol {_num(tol)})",
            f"contraction max ratio {_num(report.contraction_max_ratio)}; ratio bound {_num(report.ratio_bound)}",
        ]
        lines += [f"note      {n}" for n in report.notes]
        out.write("\n".join(lines) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_gini_table(args, out):
    ps, qs = _parse_list(args.p_list), _parse_list(args.q_list)
    if not ps or not qs:
        raise _UsageError("parameter lists must be nonempty")
    tol = args.tol if args.tol is not None else 0.01
    grid = _grid(args)
    rows = []
    for p in ps:
        for q in qs:
            est = classify_power_growth(Gini(p, q), grid).estimate
            cf = gini_order(p, q)
            err = max(abs(est.lower - cf), abs(est.upper - cf))
            rows.append((p, q, cf, est.lower, est.upper, err))
    header = ["p", "q", "closed_form", "estimated_lower", "estimated_upper", "abs_error"]
    if args.format == "json":
        _dump_json({"tol": tol, "rows": [dict(zip(header, r)) for r in rows]}, out)
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_num(v) for v in r])
    return EXIT_FAIL if any(r[-1] > tol for r in rows) else EXIT_OK


def cmd_compare(args, out):
    p, q, r, s = args.p, args.q, args.r, args.s
    verdict = {"p": p, "q": q, "r": r, "s": s,
               "pales_leq": pales_leq(p, q, r, s), "dl_leq": dl_leq(p, q, r, s)}
    if args.format == "json":
        _dump_json(verdict, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(verdict))
        w.writerow([_num(v) for v in verdict.values()])
    else:
        out.write(f"pales_leq  {_num(verdict['pales_leq'])}\ndl_leq     {_num(verdict['dl_leq'])}\n")
    return EXIT_OK


# --- argument parsing ---------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("grid and output")
    g.add_argument("--u-start", type=float, default=-1.0, help="first grid point (negative)")
    g.add_argument("--u-end", type=float, default=None,
                   help="last grid point; default -1e4, or -650 with envelopes")
    g.add_argument("--points", type=int, default=4096)
    g.add_argument("--windows", type=int, default=8)
    g.add_argument("--probes", type=int, default=64, help="phase probes per extreme; 0 disables")
    g.add_argument("--tol", type=float, default=None, help="check tolerance (command-specific default)")
    g.add_argument("--format", choices=("text", "json", "csv"), default="text")
    g.add_argument("--seed", type=int, default=0, help="seed for randomised sampling")
    g.add_argument("--output", default=None, help="write to this file instead of stdout")

    parser = _Parser(prog="meanorder", description="Orders and invariant means of bivariate means.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate a mean at (x, y)")
    p.add_argument("expr")
    p.add_argument("x", type=float)
    p.add_argument("y", type=float)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("order", parents=[common], help="estimate lower/upper orders")
    p.add_argument("expr")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("invariant", parents=[common], help="Gauss iteration for the (M,N)-invariant mean")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("x", type=float)
    p.add_argument("y", type=float)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("verify", parents=[common], help="check the invariance-order law for (M, N)")
    p.add_argument("M")
    p.add_argument("N")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gini-table", parents=[common], help="closed-form vs estimated Gini orders (CSV)")
    p.add_argument("--p-list", default=DEFAULT_GINI_PARAMS, help="comma-separated, e.g. --p-list=-1,0,1")
    p.add_argument("--q-list", default=DEFAULT_GINI_PARAMS)
    p.set_defaults(func=cmd_gini_table)

    p = sub.add_parser("compare", parents=[common], help="comparability of G(p,q) and G(r,s)")
    for name in ("p", "q", "r", "s"):
        p.add_argument(name, type=float)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"meanorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (_UsageError, ValueError) as exc:  # ParseError, DomainError, bad grid
        print(f"meanorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergence, MeanError) as exc:
        print(f"meanorder: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_EVAL
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
