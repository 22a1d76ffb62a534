"""Command-line entry point: ``octaroot <subcommand> ...``.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import basins, series, solver
from .errors import DegenerateTrace, OrderViolation, StepBreakdown
from .methods import CATALOG, ORDER, get_method, parse_param
from .mpnum import big_context, format_paper
from .problems import FUNCTION_IDS, POLY_IDS, read_polynomial, test_function, test_polynomial
from .reference import REFERENCE_BASIN_STATS, REFERENCE_ERRORS, SWEEP_TRIPLES

EXPECTED_WEIGHTS = (1, 2, 8, 2, 36, 1, 1)
_PARAMS = ("a", "b", "c", "A", "alpha", "beta", "gamma")


class UsageError(Exception):
    pass


def expand_ids(text: str, universe) -> list[str]:
    """``"m1..m6"``, ``"m1,m3"`` or ``"all"`` -> list of ids."""
    if text == "all":
        return list(universe)
    out = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"([a-z]+)(\d+)\.\.(?:\1)?(\d+)", part)
        if m:
            prefix, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
            out.extend(f"{prefix}{k}" for k in range(lo, hi + 1))
        elif part:
            out.append(part)
    for item in out:
        if item not in universe:
            raise UsageError(f"unknown id {item!r}; choose from {', '.join(universe)}")
    return out


def _method_from_args(args):
    params = {}
    for name in _PARAMS:
        v = getattr(args, f"p_{name}", None)
        if v is not None:
            params[name] = parse_param(v)
    try:
        return get_method(args.method, **params)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _add_method_args(p, default="m1"):
    p.add_argument("--method", default=default, help="method id or alias (m1..m6, family, neta, ...)")
    for name in _PARAMS:
        p.add_argument(f"--{name}", dest=f"p_{name}", metavar="X",
                       help=f"parameter {name} (exact literal, e.g. 1/2 or 1+1i)")


def _write(path, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# --------------------------------------------------------------------------
# subcommands


def cmd_solve(args) -> int:
    spec = _method_from_args(args)
    tf = test_function(args.problem)
    ctx = big_context(args.precision, spec.is_complex)
    f = tf.problem(ctx)
    x0 = ctx.convert(args.x0) if args.x0 is not None else tf.x0(ctx)
    stop = solver.StopRule(
        max_iters=args.iters,
        residual_tol=ctx.convert(args.residual_tol) if args.residual_tol else None,
        step_tol=ctx.convert(args.step_tol) if args.step_tol else None,
    )
    try:
        trace = solver.solve(spec, f, x0, stop, root=tf.root(ctx))
    except StepBreakdown as exc:
        print(f"breakdown at stage {exc.stage!r} ({exc.detail}) after "
              f"{exc.trace.iterations} iterations", file=sys.stderr)
        return 1
    print(f"{spec} on {tf.id}: {tf.formula}, x0 = {args.x0 or tf.x0_literal}, "
          f"{args.precision} digits")
    print(f"{'n':>3}  {'x_n':<28}{'|f(x_n)|':>14}{'|x_n - x*|':>14}")
    for n, (x, r, e) in enumerate(zip(trace.iterates, trace.residuals, trace.errors)):
        print(f"{n:>3}  {ctx.mp.nstr(x, 22):<28}{format_paper(r):>14}{format_paper(e, truncate=True):>14}")
    for name, fn in (("COC", solver.coc), ("ACOC", solver.acoc)):
        try:
            print(f"{name:<5} {float(fn(trace)):.4f}")
        except DegenerateTrace as exc:
            print(f"{name:<5} n/a ({exc})")
    print(f"evaluations (f, f'): {trace.evals}")
    return 0


def cmd_table(args) -> int:
    functions = expand_ids(args.function, FUNCTION_IDS)
    methods = expand_ids(args.methods, ("m1", "m2", "m3", "m4", "m5", "m6"))
    cells = solver.reproduce_table(functions, methods, args.precision, args.iters,
                                   truncate=not args.round)
    print(solver.format_table(cells))
    if args.csv:
        _write(args.csv, solver.cells_to_csv(cells))
    if not args.check:
        return 0
    failures = []
    for c in cells:
        ref = REFERENCE_ERRORS[c.function][c.method]
        for n, (got, want) in enumerate(zip(c.error_parts(), ref[0]), start=1):
            if got != (want[0][:5], want[1]):
                failures.append(f"{c.function}/{c.method} |x{n}-x*|: {got[0]}e{got[1]} "
                                f"vs printed {want[0]}e{want[1]}")
        for label, val, want in (("COC", c.coc, ref[1]), ("ACOC", c.acoc, ref[2])):
            if abs(float(val) - float(want)) > 1e-3:
                failures.append(f"{c.function}/{c.method} {label}: {float(val):.4f} vs printed {want}")
    for line in failures:
        print("MISMATCH", line, file=sys.stderr)
    return 1 if failures else 0


def cmd_verify(args) -> int:
    names = [args.method] if args.method else list(CATALOG)
    status = 0
    for name in names:
        spec = _method_from_args(argparse.Namespace(**{**vars(args), "method": name}))
        expected = args.expected if args.expected is not None else ORDER[spec.id]
        try:
            rep = series.verify_order(spec, expected, trials=args.trials, seed=args.seed)
        except OrderViolation as exc:
            print(f"FAIL {spec}: {exc}", file=sys.stderr)
            status = 1
            continue
        print(rep.to_json() if args.json else rep.to_text())
        if not args.json:
            print()
    return status


def cmd_weights(args) -> int:
    a, b, c = (parse_param(v) for v in (args.p_a, args.p_b, args.p_c))
    vals = series.check_weight_conditions(a, b, c)
    tup = tuple(vals[k] for k in series.WEIGHT_KEYS)
    print("(" + ", ".join(str(v) for v in tup) + ")")
    if tup != EXPECTED_WEIGHTS:
        print(f"weight conditions violated; expected {EXPECTED_WEIGHTS}", file=sys.stderr)
        return 1
    return 0


def _poly_from_args(args):
    if getattr(args, "poly_file", None):
        return read_polynomial(args.poly_file)
    try:
        return test_polynomial(args.poly)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _fmt_stats(st: basins.BasinStats) -> str:
    ipp, nc, icc = st.as_floats()
    return f"I/P {ipp:.3g}  NC {nc:.3g}%  I_C/C {'NONE' if icc is None else f'{icc:.3g}'}"


def cmd_basin(args) -> int:
    spec = _method_from_args(args)
    poly = _poly_from_args(args)
    fld = basins.render(spec, poly, basins.GridSpec.parse(args.grid), args.max_iters, args.tol,
                        threads=args.threads, backend=args.backend)
    st = basins.stats(fld, args.counting)
    print(f"{spec} on {poly.id} ({poly.formula}): {_fmt_stats(st)}")
    if args.out:
        basins.write_image(fld, args.out)
    if args.stats:
        _write(args.stats, basins.stats_csv([basins.stats_record(fld, st, args.method)]))
    return 0 if st.decomposition_holds() else 1


def cmd_stats(args) -> int:
    polys = expand_ids(args.polys, POLY_IDS)
    methods = expand_ids(args.methods, ("m1", "m2", "m3", "m4", "m5", "m6"))
    grid = basins.GridSpec.parse(args.grid)
    records, failures = [], []
    print(f"{'':6}" + "".join(f"{m.upper():>30}" for m in methods))
    for pid in polys:
        row = []
        for m in methods:
            fld = basins.render(m, pid, grid, args.max_iters, args.tol,
                                threads=args.threads, backend=args.backend)
            st = basins.stats(fld, args.counting)
            records.append(basins.stats_record(fld, st, m))
            ipp, nc, icc = st.as_floats()
            icc_s = "NONE" if icc is None else f"{icc:.3g}"
            row.append(f"{ipp:.3g} / {nc:.3g} / {icc_s}")
            if not st.decomposition_holds():
                failures.append(f"{pid}/{m}: decomposition identity violated")
            if args.check and m != "m6":
                r = REFERENCE_BASIN_STATS[pid][m]
                if not (abs(ipp - r[0]) <= 0.15 and abs(nc - r[1]) <= 1.0
                        and icc is not None and abs(icc - r[2]) <= 0.15):
                    failures.append(f"{pid}/{m}: ({ipp:.3g}, {nc:.3g}, {icc_s}) vs printed {r}")
        print(f"{pid:6}" + "".join(f"{c:>30}" for c in row))
    if args.csv:
        _write(args.csv, basins.stats_csv(records))
    for line in failures:
        print("MISMATCH", line, file=sys.stderr)
    return 1 if failures else 0


def _triple(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"--params {text!r}: expected a,b,c")
    return tuple(parse_param(p) for p in parts)


def cmd_sweep(args) -> int:
    triples = [_triple(t) for t in args.params] if args.params else [
        tuple(parse_param(v) for v in t) for t in SWEEP_TRIPLES
    ]
    poly = _poly_from_args(args)
    results = basins.sweep(triples, poly, basins.GridSpec.parse(args.grid), counting=args.counting,
                           max_iters=args.max_iters, capture_tol=args.tol,
                           threads=args.threads, backend=args.backend)
    outdir = Path(args.out_dir) if args.out_dir else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    records = []
    for k, res in enumerate(results):
        label = "a={},b={},c={}".format(*res.params)
        print(f"{label:<28} {_fmt_stats(res.stats)}")
        records.append(basins.stats_record(res.field, res.stats, label))
        if outdir:
            basins.write_image(res.field, outdir / f"{poly.id}_sweep{k}.ppm")
    if args.csv:
        _write(args.csv, basins.stats_csv(records))
    return 0


# --------------------------------------------------------------------------
# parser


def _add_basin_args(p, grid=True):
    if grid:
        p.add_argument("--grid", default="-3:3:-3:3:512:512", help="x_min:x_max:y_min:y_max:width:height")
    p.add_argument("--max-iters", type=int, default=15)
    p.add_argument("--tol", type=float, default=1e-3, help="capture distance")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--backend", choices=sorted(basins.BACKENDS), default=None)
    p.add_argument("--counting", choices=basins.COUNTING_MODES, default="max",
                   help="iterations charged to nonconvergent pixels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="octaroot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="iterate one method on a test function")
    _add_method_args(p)
    p.add_argument("--problem", default="f1", choices=FUNCTION_IDS)
    p.add_argument("--x0", help="start point (default: the tabulated one)")
    p.add_argument("--precision", type=int, default=solver.DEFAULT_PRECISION, help="decimal digits")
    p.add_argument("--iters", type=int, default=solver.TABLE_ITERATIONS)
    p.add_argument("--residual-tol")
    p.add_argument("--step-tol")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="error / COC / ACOC table")
    p.add_argument("--function", default="all", help="f1..f4, comma list or 'all'")
    p.add_argument("--methods", default="m1..m6")
    p.add_argument("--precision", type=int, default=solver.DEFAULT_PRECISION)
    p.add_argument("--iters", type=int, default=solver.TABLE_ITERATIONS)
    p.add_argument("--round", action="store_true", help="round mantissas instead of truncating")
    p.add_argument("--csv", help="write one record per cell ('-' for stdout)")
    p.add_argument("--check", action="store_true", help="compare against the published values")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="certify convergence order with exact series")
    _add_method_args(p, default=None)
    p.add_argument("--expected", type=int)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("weights", help="check the weight-function conditions for (a, b, c)")
    p.add_argument("--a", dest="p_a", default="1/2")
    p.add_argument("--b", dest="p_b", default="1/2")
    p.add_argument("--c", dest="p_c", default="1/2")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("basin", help="render one basin image and its statistics")
    _add_method_args(p)
    p.add_argument("--poly", default="p1")
    p.add_argument("--poly-file", help="custom polynomial text file")
    _add_basin_args(p)
    p.add_argument("--out", help="PPM image path")
    p.add_argument("--stats", help="CSV path ('-' for stdout)")
    p.set_defaults(func=cmd_basin)

    p = sub.add_parser("stats", help="convergence-measure table over polynomials and methods")
    p.add_argument("--polys", default="p1..p6")
    p.add_argument("--methods", default="m1..m6")
    _add_basin_args(p)
    p.add_argument("--csv")
    p.add_argument("--check", action="store_true", help="compare M1..M5 rows with the published values")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", help="family basins for several (a, b, c) triples")
    p.add_argument("--poly", default="p6")
    p.add_argument("--poly-file")
    p.add_argument("--params", action="append", help="a,b,c (repeatable)")
    _add_basin_args(p)
    p.add_argument("--out-dir")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_sweep)
    return parser


# flags whose values may legitimately start with "-" ("-3:3:-3:3:512:512", "-1+1i")
_SIGNED_VALUE_FLAGS = {"--grid", "--x0", "--params"} | {f"--{n}" for n in _PARAMS}


def _join_signed_values(argv):
    out, it = [], iter(argv)
    for tok in it:
        if tok in _SIGNED_VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_signed_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, KeyError) as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
