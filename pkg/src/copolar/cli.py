"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import exact, io
from .errors import CopolarError, NotCobounded
from .geometry import (
    copolar_combination,
    copolar_of_body,
    copolar_of_dual,
    copolar_sum,
    covolume,
    minkowski_combination,
)
from .newton import newton_number, newton_polyhedron
from .transforms import GridBox, capacity, extremal_gap, geodesic_convex_image, grid_tolerance
from .verify import VerifyConfig, report_json, verify_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _compact(data) -> str:
    return json.dumps(data, separators=(",", ":"))


def _cmd_copolar(args):
    data = io.load_json(args.file)
    if "generators" in data:
        print(_compact(io.body_to_dict(copolar_of_dual(io.dual_from_dict(data)))))
    else:
        print(_compact(io.dual_to_dict(copolar_of_body(io.body_from_dict(data)))))


def _cmd_sum(args):
    P, Q = io.read_body(args.P), io.read_body(args.Q)
    if args.mode == "copolar":
        R = copolar_sum(P, Q) if args.t is None else copolar_combination(P, Q, args.t)
    else:
        R = minkowski_combination(P, Q, 0.5 if args.t is None else args.t)
        if args.t is None:
            R = R.scaled(2.0)
    print(_compact(io.body_to_dict(R)))


def _cmd_covol(args):
    if args.exact:
        data = io.load_json(args.file)
        if data.get("n") != 2:
            raise io.InputError("the exact path is planar only")
        print(exact.covolume(data["normals"]))
    else:
        print(repr(covolume(io.read_body(args.file))))


def _cmd_capacity(args):
    print(repr(capacity(io.read_dual(args.file))))


def _missing_axes(A) -> list:
    """Axes without a pure power: exactly what makes the complement unbounded."""
    return [
        k + 1
        for k in range(A.dim)
        if not any(e[k] > 0 and sum(e) == e[k] for e in A.exponents)
    ]


def _cmd_newton(args):
    A = io.read_exponents(args.file)
    try:
        P = newton_polyhedron(A)
    except NotCobounded:
        axes = _missing_axes(A)
        print(_compact({"n": A.dim, "cobounded": False, "newton_number": "inf"}))
        names = ", ".join(f"z_{k}" for k in axes)
        print(f"error: Newton polyhedron is not cobounded: no exponent is a pure power of {names}",
              file=sys.stderr)
        return EXIT_INPUT
    N = newton_number(A)
    print(_compact({
        "n": A.dim,
        "cobounded": True,
        "normals": P.normals.tolist(),
        "newton_number": N.integer if N.integer is not None else N.value,
        "exact": N.exact,
        "integer": N.integer is not None,
    }))
    return EXIT_OK


def _box(args, dim):
    return GridBox.cube(-args.extent, 0.0, args.grid, dim)


def _cmd_geodesic(args):
    L0, L1 = io.read_dual(args.L0), io.read_dual(args.L1)
    U = geodesic_convex_image(L0, L1, args.t, _box(args, L0.dim), args.dual_extent)
    io.write_grid_csv(args.out, U)


def _cmd_gap(args):
    L0, L1 = io.read_dual(args.L0), io.read_dual(args.L1)
    box = _box(args, L0.dim)
    gap = extremal_gap(L0, L1, args.t, box, args.dual_extent)
    print(_compact({"gap": gap, "eps_g": grid_tolerance(box, L0, L1)}))


def _cmd_verify(args):
    cfg = VerifyConfig.from_dict(io.load_json(args.config) if args.config else {})
    report = verify_suite(cfg)
    text = report_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    s = report["summary"]
    print(f"violations: {s['violations']} / {s['instances']}", file=sys.stderr)
    return EXIT_OK if s["violations"] == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="copolar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("copolar", help="copolar of a body (or of a dual set)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_copolar)

    p = sub.add_parser("sum", help="copolar or Minkowski sum/combination")
    p.add_argument("--mode", choices=("copolar", "minkowski"), default="copolar")
    p.add_argument("--t", type=float, default=None)
    p.add_argument("P")
    p.add_argument("Q")
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("covol", help="covolume of a body")
    p.add_argument("--exact", action="store_true", help="rational arithmetic (n = 2)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_covol)

    p = sub.add_parser("capacity", help="capacity n! Covol(L°) of a dual set")
    p.add_argument("file")
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("newton", help="Newton polyhedron and Newton number")
    p.add_argument("file")
    p.set_defaults(func=_cmd_newton)

    for name, func in (("geodesic", _cmd_geodesic), ("gap", _cmd_gap)):
        p = sub.add_parser(name)
        p.add_argument("--t", type=float, required=True)
        p.add_argument("--grid", type=int, default=128)
        p.add_argument("--extent", type=float, default=6.0, help="box is [-extent, 0]^n")
        p.add_argument("--dual-extent", type=float, default=None)
        p.add_argument("L0")
        p.add_argument("L1")
        if name == "geodesic":
            p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="randomized inequality suite")
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        code = args.func(args)
    except (CopolarError, io.InputError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK if code is None else code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
