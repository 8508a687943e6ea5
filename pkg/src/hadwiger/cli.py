"""Command-line interface.

Exit codes: 0 when a certificate or witness is written, 2 when the searches
come back empty (an open case, or no zero cell), 1 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize as ser
from .certificates import OpenCase, validate
from .complex import UnsupportedDimension, annotate_cells, build_complex
from .harness import (
    GenerationError,
    InstanceSpec,
    consistency_search,
    generate_instance,
    probe_r32,
    scan_zero_cell,
    transversal_search,
    verify_theorem,
    zero_cell_certificate,
)
from .join import VARIANTS, PreconditionError
from .svg import UnsupportedPlot, emit_svg

EXIT_OK, EXIT_INPUT, EXIT_OPEN = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_instance(path: str):
    try:
        return ser.instance_from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed instance ({exc})") from exc


def _write(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _emit(payload, out) -> None:
    _write(ser.dumps(payload), out)


def cmd_gen(args) -> int:
    try:
        spec = InstanceSpec.from_dict(_read_json(args.spec))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{args.spec}: bad spec ({exc})") from exc
    try:
        inst = generate_instance(spec)
    except GenerationError as exc:
        raise InputError(str(exc)) from exc
    _emit(ser.instance_to_json(inst, spec), args.out)
    return EXIT_OK


def cmd_check_transversal(args) -> int:
    inst = _load_instance(args.instance)
    cert, searched = transversal_search(inst, args.method)
    if cert is None:
        _emit(ser.certificate_to_json(OpenCase({"search": "transversal",
                                                "subfamilies_searched": searched})), args.out)
        return EXIT_OPEN
    _emit(ser.certificate_to_json(cert), args.out)
    return EXIT_OK


def cmd_check_consistency(args) -> int:
    inst = _load_instance(args.instance)
    cert, circuits = consistency_search(inst)
    if cert is None:
        _emit(ser.certificate_to_json(OpenCase({"search": "consistency",
                                                "circuits_checked": circuits})), args.out)
        return EXIT_OPEN
    _emit(ser.certificate_to_json(cert), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    verdict = verify_theorem(inst, both=args.both, method=args.method)
    _emit(ser.verdict_to_json(verdict), args.out)
    if isinstance(verdict.certificate, OpenCase):
        if verdict.diagnostics.get("contradicts_bound"):
            print("warning: open case at r >= the known upper bound", file=sys.stderr)
        return EXIT_OPEN
    return EXIT_OK


def cmd_scan_zero_cell(args) -> int:
    inst = _load_instance(args.instance)
    try:
        hit = scan_zero_cell(inst, args.variant)
    except PreconditionError as exc:
        raise InputError(str(exc)) from exc
    if hit is None:
        _emit({"cell": None, "variant": args.variant}, args.out)
        return EXIT_OPEN
    cert = zero_cell_certificate(inst, hit)
    check = validate(inst.family, inst.ordering, cert, inst.independence())
    if not check:
        raise AssertionError(f"zero-cell certificate failed validation: {check.problems}")
    _emit(ser.witness_to_json(hit, cert), args.out)
    return EXIT_OK


def cmd_complex(args) -> int:
    inst = _load_instance(args.instance)
    try:
        cx = build_complex(inst.family)
    except UnsupportedDimension as exc:
        raise InputError(str(exc)) from exc
    _emit(ser.complex_to_json(cx, annotate_cells(cx, inst.family)), args.out)
    return EXIT_OK


def cmd_probe_r32(args) -> int:
    if args.rmin > args.rmax:
        raise InputError("--rmin exceeds --rmax")
    report = probe_r32(args.rmin, args.rmax, range(1, args.seeds + 1),
                       members_per_color=args.members_per_color)
    _emit(report, args.out)
    return EXIT_OK


def cmd_plot(args) -> int:
    inst = _load_instance(args.instance)
    cert = None
    if args.certificate is not None:
        data = _read_json(args.certificate)
        if "certificate" in data:  # a verdict file
            data = data["certificate"]
        try:
            cert = ser.certificate_from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{args.certificate}: malformed certificate ({exc})") from exc
    try:
        _write(emit_svg(inst.family, cert), args.out)
    except UnsupportedPlot as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is reserved for open cases here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hadwiger",
                description="Exact checks of colored hyperplane-transversal theorems.")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("--out", help="output file (default stdout)")

    g = sub.add_parser("gen", help="generate an instance from a spec file")
    g.add_argument("--spec", required=True)
    out(g)
    g.set_defaults(func=cmd_gen)

    for name, func, helptext in (
        ("check-transversal", cmd_check_transversal, "search for a monochromatic transversal"),
        ("check-consistency", cmd_check_consistency, "check rainbow consistency of the ordering"),
    ):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("instance")
        if func is cmd_check_transversal:
            c.add_argument("--method", choices=("vertices", "cells"), default="vertices")
        out(c)
        c.set_defaults(func=func)

    v = sub.add_parser("verify", help="run the full dichotomy pipeline")
    v.add_argument("instance")
    v.add_argument("--both", action="store_true", help="compute both certificates")
    v.add_argument("--method", choices=("vertices", "cells"), default="vertices")
    out(v)
    v.set_defaults(func=cmd_verify)

    z = sub.add_parser("scan-zero-cell", help="find a cell whose S(sigma) holds the origin")
    z.add_argument("instance")
    z.add_argument("--variant", choices=VARIANTS, required=True)
    out(z)
    z.set_defaults(func=cmd_scan_zero_cell)

    cx = sub.add_parser("complex", help="dump the annotated sphere complex")
    cx.add_argument("instance")
    out(cx)
    cx.set_defaults(func=cmd_complex)

    pr = sub.add_parser("probe-r32", help="tabulate verdicts for d=3, k=2 over r and seeds")
    pr.add_argument("--rmin", type=int, default=4)
    pr.add_argument("--rmax", type=int, default=7)
    pr.add_argument("--seeds", type=int, default=50, help="seeds 1..N")
    pr.add_argument("--members-per-color", type=int, default=5)
    out(pr)
    pr.set_defaults(func=cmd_probe_r32)

    pl = sub.add_parser("plot", help="render a d=2 instance and certificate as SVG")
    pl.add_argument("instance")
    pl.add_argument("certificate", nargs="?")
    out(pl)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
