"""Batch command line front end.

Every command writes a single JSON line to stdout (or a CSV file for sweeps)
and keeps diagnostics on stderr.  Exit codes: 0 ok, 2 domain error, 3 I/O
error.  All numbers are deterministic: fixed quadrature nodes, no randomness.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from .closed_forms import hyperbolic_quad_volume, triangle_volume
from .errors import HilbertGeomError
from .flags import (
    FGQuadCoords,
    fg_to_normalized,
    normalized_pair,
)
from .hilbert import Q0, T0, dual_ball_area
from .projective import ConvexPolygon
from .quadrature import QuadratureSpec, ht_area
from .surfaces import s03_area_lower_bound, surface_lower_bound

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_IO = 3


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload) + "\n")


def _spec(tol: float) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=tol)


def cmd_triangle(args) -> int:
    from .flags import InscribedPair

    closed = triangle_volume(args.t)
    s = 2.0 * args.t / (args.t + 1.0)
    inner = ConvexPolygon([(1.0, 1.0), (1.0, 0.0), (0.0, s)])
    pair = InscribedPair(inner=inner, outer=T0)
    quad = ht_area(pair, _spec(args.tol))
    _emit(
        {
            "t": args.t,
            "closed_form": closed,
            "quadrature": quad.value,
            "abs_diff": abs(closed - quad.value),
        }
    )
    return EXIT_OK


def cmd_quad(args) -> int:
    coords = FGQuadCoords(t=args.t, tp=args.tp, d=args.d, dp=args.dp)
    params = fg_to_normalized(coords)
    result = ht_area(normalized_pair(params), _spec(args.tol))
    _emit(
        {
            "t": args.t,
            "tp": args.tp,
            "d": args.d,
            "dp": args.dp,
            "alpha1": params.alpha1,
            "alpha2": params.alpha2,
            "beta1": params.beta1,
            "beta2": params.beta2,
            "area": result.value,
            "error_estimate": result.error_estimate,
        }
    )
    return EXIT_OK


def cmd_hyperbolic_sweep(args) -> int:
    if not (0.0 < args.d_min < args.d_max):
        raise HilbertGeomError("need 0 < d-min < d-max")
    if args.steps < 2:
        raise HilbertGeomError("need at least 2 steps")
    header = ["d", "alpha", "closed_form"]
    if args.quadrature:
        header.append("quadrature")
    header.append("hyperbolic_bound")
    rows = []
    log_min, log_max = math.log(args.d_min), math.log(args.d_max)
    for i in range(args.steps):
        d = math.exp(log_min + (log_max - log_min) * i / (args.steps - 1))
        alpha = (d - 1.0) / (d + 1.0)
        row = [repr(d), repr(alpha), repr(hyperbolic_quad_volume(d))]
        if args.quadrature:
            from .flags import NormalizedQuadParams

            params = NormalizedQuadParams(
                alpha1=-alpha, alpha2=alpha, beta1=alpha, beta2=-alpha
            )
            row.append(repr(ht_area(normalized_pair(params), _spec(args.tol)).value))
        row.append(repr(2.0 * math.pi))
        rows.append(row)
    try:
        with open(args.out, "w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    _emit({"out": args.out, "rows": len(rows), "columns": header})
    return EXIT_OK


def cmd_s03(args) -> int:
    d = math.exp(args.ld)
    t = math.exp(args.lt)
    result = s03_area_lower_bound(d, t, _spec(args.tol))
    _emit(
        {
            "ld": args.ld,
            "lt": args.lt,
            "d": d,
            "t": t,
            "lower_bound": result.value,
            "error_estimate": result.error_estimate,
        }
    )
    return EXIT_OK


def cmd_surface_bound(args) -> int:
    ratios = [float(x) for x in args.ratios.split(",") if x.strip()]
    bound = surface_lower_bound(args.chi, ratios)
    _emit({"chi": args.chi, "ratios": ratios, "bound": bound})
    return EXIT_OK


def _load_outer(spec: str) -> ConvexPolygon:
    if spec == "q0":
        return Q0
    if spec == "t0":
        return T0
    with open(spec) as handle:
        data = json.load(handle)
    return ConvexPolygon([tuple(v) for v in data["vertices"]])


def cmd_ball(args) -> int:
    try:
        outer = _load_outer(args.outer)
    except OSError as exc:
        print(f"cannot read {args.outer}: {exc}", file=sys.stderr)
        return EXIT_IO
    area = dual_ball_area(outer, (args.x, args.y))
    _emit({"outer": args.outer, "x": args.x, "y": args.y, "dual_area": area})
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertgeom",
        description="Hilbert-metric areas of inscribed polygons",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triangle", help="triangle pair area, closed form vs quadrature")
    p.add_argument("--t", type=float, required=True, help="triple ratio")
    p.add_argument("--tol", type=float, default=1e-7)
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("quad", help="quadrilateral pair area from (t, t', d, d')")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--tp", type=float, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--dp", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-7)
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("hyperbolic-sweep", help="CSV sweep of the symmetric family")
    p.add_argument("--d-min", dest="d_min", type=float, required=True)
    p.add_argument("--d-max", dest="d_max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--quadrature", action="store_true", help="add a quadrature column")
    p.add_argument("--tol", type=float, default=1e-7)
    p.set_defaults(func=cmd_hyperbolic_sweep)

    p = sub.add_parser("s03", help="area lower bound at (ln d, ln t)")
    p.add_argument("--ld", type=float, required=True)
    p.add_argument("--lt", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-7)
    p.set_defaults(func=cmd_s03)

    p = sub.add_parser("surface-bound", help="ideal-triangulation area lower bound")
    p.add_argument("--chi", type=int, required=True, help="Euler characteristic (< 0)")
    p.add_argument("--ratios", required=True, help="comma-separated triple ratios")
    p.set_defaults(func=cmd_surface_bound)

    p = sub.add_parser("ball", help="dual unit-ball area at a point")
    p.add_argument("--outer", required=True, help="q0, t0, or a JSON vertex file")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.set_defaults(func=cmd_ball)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HilbertGeomError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
