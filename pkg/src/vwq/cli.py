"""Command-line front end.

Exit codes: 0 success or verified, 1 verification failed, 2 usage or
precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import mock_modular as mm
from . import partition as pt
from .number_theory import ThetaIrrationalityError, hurwitz, theta_block
from .series import FracExpSeries, SeriesError
from .tautological import CurveModel, closed_form, kernel_constant, monopole_series

DEFAULT_ORDER = 12
DEFAULT_TOL = 1e-6
FORMATS = ("json", "csv", "text")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def default_order() -> int:
    raw = os.environ.get("VWQ_DEFAULT_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"VWQ_DEFAULT_ORDER must be an integer, got {raw!r}")
    return value


# -- output ----------------------------------------------------------------------


def emit(series: FracExpSeries, fmt: str = "json") -> str:
    if fmt == "json":
        return series.to_json()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for k, c in series.terms.items():
            writer.writerow([k, series.denom, c.numerator, c.denominator])
        return buf.getvalue().rstrip("\n")
    if fmt == "text":
        rows = [(str(e), str(c)) for e, c in series.items()]
        width = max((len(e) for e, _ in rows), default=0)
        lines = [f"q^{e.ljust(width)}  {c}" for e, c in rows]
        window = f"O(q^{series.trunc})"
        if series.floor is not None:
            window += f", known from q^{series.floor}"
        lines.append(window)
        return "\n".join(lines)
    raise ValueError(f"unknown format {fmt!r}")


def parse(text: str, fmt: str = "json") -> FracExpSeries:
    if fmt != "json":
        raise ValueError("only the canonical JSON form can be parsed")
    return FracExpSeries.from_json(text)


def _write(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _frac(x: Fraction) -> str:
    return str(x)


# -- commands ------------------------------------------------------------------------


def cmd_hurwitz(args) -> int:
    lines = ["delta,H"]
    lines += [f"{d},{_frac(hurwitz(d))}" for d in range(args.max + 1)]
    _write(args, "\n".join(lines))
    return EXIT_OK


def cmd_theta(args) -> int:
    try:
        series = theta_block(args.n, args.order)
    except ThetaIrrationalityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    _write(args, emit(series, args.format))
    return EXIT_OK


def cmd_partition(args) -> int:
    surface, c1, order = args.surface, args.c1, args.order
    if surface != "p222" and args.lam is not None:
        raise pt.PreconditionError("--lambda only applies to p222")
    if surface == "p2":
        series = pt.z_vb_p2(c1, order, args.drop_divisor_term)
    elif surface == "p122":
        series = pt.z_vb_p122(c1, order, args.drop_divisor_term)
    else:
        series = pt.z_vb_p222(c1, args.lam or 0, order, args.drop_divisor_term)
    _write(args, emit(series, args.format))
    return EXIT_OK


def _monopole_payload(genus: int, order: int, gerbe: int) -> dict:
    cm = CurveModel(genus, gerbe)
    computed = monopole_series(cm, order)
    kernel = closed_form(genus, order)
    constant = kernel_constant(genus, order)
    return {
        "genus": genus,
        "gerbe": gerbe,
        "order": order,
        "computed": computed.to_dict(),
        "closed_form": kernel.to_dict(),
        "identical": computed == kernel,
        "kernel_constant": None if constant is None else _frac(constant),
    }


def cmd_monopole(args) -> int:
    _write(args, _json(_monopole_payload(args.genus, args.order, args.gerbe)))
    return EXIT_OK


def cmd_verify(args) -> int:
    order = args.order
    reports = []
    if args.identity == "p122-p2":
        c1s = [args.c1] if args.c1 is not None else [0, 4, 8]
        reports = [pt.verify_p122_identity(c1, order).to_dict() for c1 in c1s]
    elif args.identity == "p222-shift":
        c1s = [args.c1] if args.c1 is not None else [0, 2, 4, 6]
        lams = [args.lam] if args.lam is not None else [0, 1]
        reports = [pt.verify_p222_shift(c1, lam, order).to_dict() for c1 in c1s for lam in lams]
    elif args.identity == "so3-assembly":
        reports = [pt.verify_so3_assembly(order).to_dict()]
    elif args.identity == "monopole-closed-form":
        if order < 1:
            raise pt.PreconditionError("order must be at least 1")
        genera = [args.genus] if args.genus is not None else [0, 1, 2, 6]
        for g in genera:
            payload = _monopole_payload(g, order, args.gerbe)
            reports.append({
                "identity": "monopole-closed-form",
                "params": {"genus": g, "gerbe": args.gerbe, "order": order},
                "pass": payload["identical"],
                "kernel_constant": payload["kernel_constant"],
            })
    passed = all(r["pass"] for r in reports)
    _write(args, _json({"identity": args.identity, "pass": passed, "reports": reports}))
    return EXIT_OK if passed else EXIT_FAILED


def cmd_toda(args) -> int:
    surface = pt.AdeSurface(args.chi, tuple(args.a_n or ()))
    try:
        series = pt.toda_series(surface, args.order)
    except ThetaIrrationalityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    _write(args, emit(series, args.format))
    return EXIT_OK


def cmd_sduality(args) -> int:
    tau = mm.UpperHalfPoint.parse(args.tau)
    check = {
        "sduality": mm.check_sduality_p2,
        "s-matrix": mm.check_S_matrix,
        "t": mm.check_T,
    }[args.check]
    report = check(tau, args.tol)
    _write(args, _json(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_invariants(args) -> int:
    g_c, p_g, h0 = pt.quintic_invariants()
    _write(args, f"g_C={g_c}\np_g={p_g}\nh0K2={h0}")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    order = default_order()
    parser = argparse.ArgumentParser(prog="vwq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, series_output=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write output to PATH instead of stdout")
        if series_output:
            p.add_argument("--order", type=_positive_int, default=order)
            p.add_argument("--format", choices=FORMATS, default="json")
        return p

    p = add("hurwitz", cmd_hurwitz, "CSV table of Hurwitz class numbers")
    p.add_argument("--max", type=int, required=True)

    p = add("theta", cmd_theta, "theta block Theta_n as a q-series", series_output=True)
    p.add_argument("--n", type=_positive_int, required=True)

    p = add("partition", cmd_partition, "vector-bundle partition functions", series_output=True)
    p.add_argument("--surface", choices=pt.SURFACES, required=True)
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, choices=(0, 1))
    p.add_argument("--drop-divisor-term", action="store_true")

    p = add("verify", cmd_verify, "check an exact identity")
    p.add_argument(
        "--identity",
        choices=("p122-p2", "p222-shift", "so3-assembly", "monopole-closed-form"),
        required=True,
    )
    p.add_argument("--order", type=_positive_int, default=order)
    p.add_argument("--c1", type=int)
    p.add_argument("--lambda", dest="lam", type=int, choices=(0, 1))
    p.add_argument("--genus", type=int)
    p.add_argument("--gerbe", type=_positive_int, default=1)

    p = add("monopole", cmd_monopole, "monopole series against its closed form")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--order", type=_positive_int, default=order)
    p.add_argument("--gerbe", type=_positive_int, default=1)

    p = add("toda", cmd_toda, "Hilbert scheme generating series of an A_n surface", series_output=True)
    p.add_argument("--chi", type=int, required=True, help="Euler characteristic of the resolution")
    p.add_argument("--a-n", type=_positive_int, action="append", help="rank of an A_n point (repeatable)")

    p = add("sduality", cmd_sduality, "numerical S-duality check for P^2")
    p.add_argument("--tau", required=True, help="RE,IM")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--check", choices=("sduality", "s-matrix", "t"), default="sduality")

    add("invariants", cmd_invariants, "topological invariants of the quintic")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (pt.PreconditionError, mm.AccuracyError, SeriesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
