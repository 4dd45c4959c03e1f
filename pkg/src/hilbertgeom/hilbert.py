"""Hilbert distance, Finsler norms, unit tangent balls and their polar duals.

The ambient domain is always a bounded convex polygon.  Unit balls are
computed by the vertex-ray construction: the ball at an interior point is the
symmetric hull of the unit tangent vectors toward the polygon vertices, and
its polar dual is given by an explicit vertex formula for symmetric polygons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    OriginNotInterior,
    OutsideDomain,
    PointOutsideDomain,
    ZeroVector,
)
from .projective import (
    EPS_CONVEX,
    CentrallySymmetricPolygon,
    ConvexPolygon,
    Vec2,
    cross_ratio,
    shoelace_area,
)

#: The standard triangle with vertices (0,0), (2,0), (0,2).
T0 = ConvexPolygon([(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)])

#: The standard quadrilateral with vertices (+-1, +-1).
Q0 = ConvexPolygon([(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)])


@dataclass(frozen=True)
class TangentVector:
    """A tangent vector: base point and direction in the affine chart."""

    point: Vec2
    direction: Vec2


def _require_interior(omega: ConvexPolygon, p: Vec2, margin_scale: float = EPS_CONVEX):
    if not omega.contains(p, margin_scale * omega.diameter):
        raise PointOutsideDomain(f"point {p} is not strictly inside the domain")


def _ray_boundary_params(omega: ConvexPolygon, p: Vec2, xi: Vec2) -> tuple[float, float]:
    """Parameters (t_minus, t_plus) of the boundary hits of t -> p + t*xi.

    Requires ``p`` strictly interior and ``xi`` nonzero; then the line meets
    the boundary exactly once forward and once backward.
    """
    px, py = p
    dx, dy = xi
    speed = math.hypot(dx, dy)
    hits: list[float] = []
    for (ax, ay), (bx, by) in omega.edges():
        ex, ey = bx - ax, by - ay
        den = dx * ey - dy * ex
        elen = math.hypot(ex, ey)
        if abs(den) <= EPS_CONVEX * speed * elen:
            continue  # ray parallel to this edge
        wx, wy = ax - px, ay - py
        t = (wx * ey - wy * ex) / den
        s = (dx * wy - dy * wx) / -den
        if -EPS_CONVEX <= s <= 1.0 + EPS_CONVEX:
            hits.append(t)
    forward = [t for t in hits if t > 0.0]
    backward = [t for t in hits if t < 0.0]
    if not forward or not backward:
        raise PointOutsideDomain("ray does not cross the boundary on both sides")
    return max(backward), min(forward)


def hilbert_distance(omega: ConvexPolygon, p: Vec2, q: Vec2) -> float:
    """Hilbert distance between two interior points of a convex polygon.

    Half the log of the cross ratio of (q, p) with the two boundary points of
    their chord, ordered so the distance is nonnegative.
    """
    _require_interior(omega, p)
    _require_interior(omega, q)
    dx, dy = q[0] - p[0], q[1] - p[1]
    if math.hypot(dx, dy) <= EPS_CONVEX * omega.diameter:
        return 0.0
    t_a, t_b = _ray_boundary_params(omega, p, (dx, dy))
    # Along the chord: a (param t_a < 0), p (0), q (1), b (param t_b > 1).
    value = cross_ratio(1.0, 0.0, t_a, t_b)
    return 0.5 * math.log(value)


def finsler_norm(omega: ConvexPolygon, v: TangentVector) -> float:
    """The Hilbert-metric Finsler norm of a tangent vector."""
    _require_interior(omega, v.point)
    if math.hypot(*v.direction) == 0.0:
        raise ZeroVector("finsler norm of the zero vector is undefined")
    t_minus, t_plus = _ray_boundary_params(omega, v.point, v.direction)
    # xi = sigma+ (v+ - p) = sigma- (p - v-), with v+- = p + t+- xi.
    return 0.5 * (1.0 / t_plus - 1.0 / t_minus)


def _unit_ball_vertices(omega: ConvexPolygon, p: Vec2) -> list[Vec2]:
    """The +-xi_z vertex candidates of the unit ball at ``p``."""
    px, py = p
    out: list[Vec2] = []
    for z in omega.vertices:
        dx, dy = z[0] - px, z[1] - py
        t_minus, _ = _ray_boundary_params(omega, p, (dx, dy))
        # Forward hit is the vertex itself (t = 1); unit-norm scaling gives
        # xi_z = 2 (z - p) / (1 - 1/t_minus).
        scale = 2.0 / (1.0 - 1.0 / t_minus)
        out.append((scale * dx, scale * dy))
    return out + [(-x, -y) for x, y in out]


def unit_ball(omega: ConvexPolygon, p: Vec2) -> CentrallySymmetricPolygon:
    """Unit tangent ball of the Hilbert metric at an interior point.

    Equals the harmonic symmetrization of ``omega - p`` about the origin; its
    vertices are the unit tangent vectors toward the vertices of ``omega`` and
    their opposites, with coincident directions merged.
    """
    _require_interior(omega, p)
    return CentrallySymmetricPolygon.from_vertices(_unit_ball_vertices(omega, p))


def dual_polygon(ball: CentrallySymmetricPolygon) -> CentrallySymmetricPolygon:
    """Polar dual of a centrally symmetric polygon, by the vertex formula.

    With the upper half labeled z_1..z_k left to right and z_0 = -z_k, dual
    vertex i is (y_i - y_{i-1}, x_{i-1} - x_i) / (x_{i-1} y_i - x_i y_{i-1}).
    """
    half = ball.half
    duals = _dual_half_vertices(half)
    return CentrallySymmetricPolygon.from_vertices(
        duals + [(-x, -y) for x, y in duals]
    )


def _dual_half_vertices(half: tuple[Vec2, ...]) -> list[Vec2]:
    k = len(half)
    scale = max(math.hypot(*v) for v in half)
    prev = (-half[k - 1][0], -half[k - 1][1])
    out: list[Vec2] = []
    sign = 0.0
    for i in range(k):
        cur = half[i]
        den = prev[0] * cur[1] - cur[0] * prev[1]
        if abs(den) <= 1e-14 * scale * scale:
            raise OriginNotInterior("degenerate consecutive vertices in dual")
        if sign == 0.0:
            sign = math.copysign(1.0, den)
        elif math.copysign(1.0, den) != sign:
            raise OriginNotInterior("inconsistent orientation in dual formula")
        out.append(((cur[1] - prev[1]) / den, (prev[0] - cur[0]) / den))
        prev = cur
    return out


def dual_ball_area(omega: ConvexPolygon, p: Vec2) -> float:
    """Euclidean area of the polar dual of the unit tangent ball at ``p``."""
    ball = unit_ball(omega, p)
    return dual_polygon(ball).area()


def _dual_ball_area_fast(omega: ConvexPolygon, p: Vec2) -> float:
    """Validation-free pipeline used as a quadrature integrand."""
    pts = _unit_ball_vertices(omega, p)
    scale = max(math.hypot(*v) for v in pts)
    tol = 1e-12 * scale
    pts.sort(key=lambda v: math.atan2(v[1], v[0]))
    merged: list[Vec2] = []
    for q in pts:
        if merged and math.hypot(q[0] - merged[-1][0], q[1] - merged[-1][1]) <= tol:
            continue
        merged.append(q)
    if len(merged) > 1 and math.hypot(
        merged[0][0] - merged[-1][0], merged[0][1] - merged[-1][1]
    ) <= tol:
        merged.pop()
    axis_tol = EPS_CONVEX * scale
    upper = [v for v in merged if v[1] > axis_tol or (abs(v[1]) <= axis_tol and v[0] > 0.0)]
    upper.reverse()  # counter-clockwise arc runs right to left
    duals = _dual_half_vertices(tuple(upper))
    full = duals + [(-x, -y) for x, y in duals]
    area = 0.0
    n = len(full)
    for i in range(n):
        x0, y0 = full[i]
        x1, y1 = full[(i + 1) % n]
        area += x0 * y1 - x1 * y0
    return abs(area) / 2.0


def integrand_T0(x: float, y: float) -> float:
    """Dual-ball area at an interior point of the standard triangle."""
    if not (x > 0.0 and y > 0.0 and x + y < 2.0):
        raise OutsideDomain(f"({x}, {y}) is not interior to the standard triangle")
    return 3.0 / (2.0 * x * y * (2.0 - x - y))


def integrand_Q0(x: float, y: float) -> float:
    """Dual-ball area at an interior point of the standard quadrilateral.

    Extended continuously to the diagonals y = +-x.
    """
    if not (abs(x) < 1.0 and abs(y) < 1.0):
        raise OutsideDomain(f"({x}, {y}) is not interior to the standard square")
    return (2.0 + max(abs(x), abs(y))) / (2.0 * (1.0 - x * x) * (1.0 - y * y))


def integrand_T0_array(x, y):
    """Vectorized standard-triangle integrand (no domain checks)."""
    x = np.asarray(x)
    y = np.asarray(y)
    return 3.0 / (2.0 * x * y * (2.0 - x - y))


def integrand_Q0_array(x, y):
    """Vectorized standard-quadrilateral integrand (no domain checks)."""
    x = np.asarray(x)
    y = np.asarray(y)
    return (2.0 + np.maximum(np.abs(x), np.abs(y))) / (
        2.0 * (1.0 - x * x) * (1.0 - y * y)
    )
