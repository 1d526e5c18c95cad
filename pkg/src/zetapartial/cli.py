"""Command-line front end: ``zetapartial <subcommand> ...``.

Tolerances resolve as command line > ``ZETAPARTIAL_TOL_*`` environment
variables > built-in defaults.  Exit codes: 0 success, 1 usage error,
2 bound violation, 3 numerical failure, 4 output error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict

import numpy as np

from . import kernels
from .coefficients import (
    KINDS,
    brun_set_count,
    brun_set_members,
    build_coefficient_table,
    build_table,
    count_nonzero_coefficients,
    density_ratio,
)
from .cyclotomic import cyclotomic_field
from .dirichlet_poly import build_partial_sum, evaluate, imag_on_horizontal
from .errors import DomainError, ZetaPartialError
from .report import (
    EXIT_BOUND,
    EXIT_IO,
    EXIT_NUMERICAL,
    EXIT_OK,
    ExperimentConfig,
    OutputError,
    emit,
    run_experiment,
    write_text,
)
from .zero_engine import (
    DEFAULT_TOLERANCES,
    Rectangle,
    Tolerances,
    count_zeros,
    locate_zeros,
    strip_bounds,
    verify_counting,
)

EXIT_USAGE = 1
ENV_PREFIX = "ZETAPARTIAL_"
TOLERANCE_NAMES = ("bisection", "residual", "boundary", "newton")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def resolve_tolerances(args) -> Tolerances:
    values = {}
    for name in TOLERANCE_NAMES:
        cli = getattr(args, f"tol_{name}", None)
        env = os.environ.get(f"{ENV_PREFIX}TOL_{name.upper()}")
        if cli is not None:
            values[name] = cli
        elif env is not None:
            values[name] = float(env)
    return Tolerances(**values)


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _range_spec(text):
    try:
        a, b, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected a:b:step")
    if step <= 0 or b < a:
        raise argparse.ArgumentTypeError("need a <= b and step > 0")
    return a, b, step


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    for row in rows:
        w.writerow([format(v, ".15g") if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# -- subcommands ---------------------------------------------------------------


def cmd_field_info(args):
    write_text(_dump(cyclotomic_field(args.q).to_dict()), args.output)
    return EXIT_OK


def cmd_coeffs(args):
    table = build_table(cyclotomic_field(args.q), args.x, args.kind)
    rows = list(table.items())
    if args.format == "csv":
        text = _csv(rows, ("n", "value"))
    else:
        text = _dump({"q": args.q, "X": args.x, "kind": args.kind, "values": [{"n": n, "value": v} for n, v in rows]})
    write_text(text, args.output)
    return EXIT_OK


def cmd_density(args):
    field_ = cyclotomic_field(args.q)
    table = build_coefficient_table(field_, max(args.grid))
    rows = []
    for x in args.grid:
        ratio = density_ratio(field_, x, table) if x >= 16 else ""
        rows.append((x, count_nonzero_coefficients(table, x), ratio))
    write_text(_csv(rows, ("x", "count", "ratio")), args.output)
    return EXIT_OK


def cmd_brun(args):
    out = {"q": args.q, "y": args.y, "count": brun_set_count(args.q, args.y)}
    if args.members:
        out["members"] = brun_set_members(args.q, args.y)
    write_text(_dump(out), args.output)
    return EXIT_OK


def cmd_eval(args):
    P = build_partial_sum(cyclotomic_field(args.q), args.x)
    v = evaluate(P, (args.sigma, args.t))
    write_text(f"{v.real!r} {v.imag!r}\n", args.output)
    return EXIT_OK


def cmd_imslice(args):
    P = build_partial_sum(cyclotomic_field(args.q), args.x)
    a, b, step = args.sigma_range
    sigmas = np.arange(a, b + 0.5 * step, step).tolist()
    rows = [(s, imag_on_horizontal(P, s, args.t)) for s in sigmas]
    write_text(_csv(rows, ("sigma", "im")), args.output)
    return EXIT_OK


def cmd_bounds(args):
    field_ = cyclotomic_field(args.q)
    P = build_partial_sum(field_, args.x)
    tol = resolve_tolerances(args)
    sb = strip_bounds(P, field_.n0, args.delta0, tol.bisection)
    out = {"alpha": None, "beta": None, "alpha_paper": None} if sb is None else asdict(sb)
    out["N"] = P.N
    write_text(_dump(out), args.output)
    return EXIT_OK


def cmd_count(args):
    field_ = cyclotomic_field(args.q)
    res = count_zeros(build_partial_sum(field_, args.x), args.t, field_.n0, resolve_tolerances(args))
    write_text(_dump(res.to_dict()), args.output)
    return EXIT_OK


def cmd_zeros(args):
    field_ = cyclotomic_field(args.q)
    P = build_partial_sum(field_, args.x)
    tol = resolve_tolerances(args)
    sb = strip_bounds(P, field_.n0, tol=tol.bisection)
    records = []
    if sb is not None and args.t > 0:
        rect = Rectangle(sb.alpha - tol.margin, sb.beta + tol.margin, 0.0, args.t)
        records = locate_zeros(P, rect, tol)
    rows = [(r.s.real, r.s.imag, r.residual) for r in records]
    if args.format == "csv":
        text = _csv(rows, ("re", "im", "residual"))
    else:
        text = _dump([{"re": a, "im": b, "residual": c} for a, b, c in rows])
    write_text(text, args.output)
    return EXIT_OK


def cmd_verify(args):
    rep = verify_counting(cyclotomic_field(args.q), args.x, args.t, resolve_tolerances(args), args.delta0)
    write_text(_dump(rep.to_dict()), args.output)
    return EXIT_OK if rep.lrz2_pass else EXIT_BOUND


def cmd_experiment(args):
    fmt = args.format or os.environ.get(f"{ENV_PREFIX}FORMAT", "json")
    config = ExperimentConfig(
        q=args.q,
        X_grid=tuple(args.x_grid),
        T_grid=tuple(args.t_grid),
        tolerances=resolve_tolerances(args),
        format=fmt,
        output=args.output,
        y_grid=tuple(args.y_grid) if args.y_grid else None,
    )
    report = run_experiment(config)
    emit(report, config.format, config.output, include_timings=args.timings)
    return report.exit_code


# -- parser --------------------------------------------------------------------


def _add_tolerances(p):
    g = p.add_argument_group(
        "tolerances", f"override {ENV_PREFIX}TOL_<NAME>, which overrides the default"
    )
    for name in TOLERANCE_NAMES:
        g.add_argument(
            f"--tol-{name}",
            type=float,
            default=None,
            help=f"default {getattr(DEFAULT_TOLERANCES, name):g}",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zetapartial", description="Zeros of partial sums of cyclotomic Dedekind zeta functions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        p.set_defaults(func=func)
        p.add_argument("--q", type=int, required=True, help="order of the root of unity")
        p.add_argument("--output", "-o", default="-", help="output path ('-' for stdout)")
        return p

    p = command("field-info", cmd_field_info, "degree and ramified-prime splitting data of Q(zeta_q)")

    p = command("coeffs", cmd_coeffs, "coefficient table a, b or c up to X")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--kind", choices=KINDS, default="a")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = command("density", cmd_density, "nonzero-coefficient counts and normalized density")
    p.add_argument("--grid", type=_float_list, required=True, help="comma-separated x values")

    p = command("brun", cmd_brun, "count squarefree n <= y with all prime factors 1 mod q")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--members", action="store_true", help="also list the members")

    p = command("eval", cmd_eval, "evaluate the partial sum at sigma + i t")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--t", type=float, required=True)

    p = command("imslice", cmd_imslice, "Im of the partial sum along a horizontal line, as CSV")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--sigma-range", type=_range_spec, required=True, help="a:b:step")

    p = command("bounds", cmd_bounds, "zero strip alpha < Re s < beta and the closed-form alpha")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--delta0", type=float, default=0.1)
    _add_tolerances(p)

    p = command("count", cmd_count, "number of zeros with 0 < Im s <= T")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    _add_tolerances(p)

    p = command("zeros", cmd_zeros, "locate all zeros with 0 < Im s <= T")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_tolerances(p)

    p = command("verify", cmd_verify, "compare N(T) with (T/2pi) log N and the X/2 bound")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--delta0", type=float, default=0.1)
    _add_tolerances(p)

    p = command("experiment", cmd_experiment, "full verification over X and T grids")
    p.add_argument("--x-grid", type=_float_list, required=True)
    p.add_argument("--t-grid", type=_float_list, required=True)
    p.add_argument("--y-grid", type=_float_list, default=None, help="Brun y values (default: the X grid)")
    p.add_argument("--format", choices=("csv", "json"), default=None, help=f"default json, or {ENV_PREFIX}FORMAT")
    p.add_argument("--timings", action="store_true", help="include wall times (output is then not reproducible)")
    _add_tolerances(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OutputError as exc:
        print(f"zetapartial: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"zetapartial: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZetaPartialError as exc:
        print(f"zetapartial: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
