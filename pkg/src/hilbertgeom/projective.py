"""Projective-plane primitives: determinants, cross ratios, homographies, polygons.

Points of the projective line are plain floats plus the ``INFINITY`` sentinel;
points of the plane are ``(x, y)`` tuples in an affine chart, with homogeneous
``(x, y, 1)`` representatives used internally.  All tolerances are relative and
centralized in ``EPS_DET`` / ``EPS_CONVEX``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateConfiguration,
    DegenerateCrossRatio,
    OriginNotInterior,
)

Vec2 = tuple[float, float]
Vec3 = tuple[float, float, float]

# Relative tolerance for matrix / determinant degeneracy tests.
EPS_DET = 1e-12
# Relative tolerance for convexity, incidence and containment tests.
EPS_CONVEX = 1e-10


class _ProjectiveInfinity:
    """Sentinel for the point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _ProjectiveInfinity()


def wedge3(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> float:
    """Determinant of the 3x3 matrix with columns ``a``, ``b``, ``c``."""
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - b[0] * (a[1] * c[2] - a[2] * c[1])
        + c[0] * (a[1] * b[2] - a[2] * b[1])
    )


def _homog1(x) -> tuple[float, float]:
    """Homogeneous pair for a point of the projective line."""
    if x is INFINITY:
        return (1.0, 0.0)
    return (float(x), 1.0)


def _diff1(p: tuple[float, float], q: tuple[float, float]) -> float:
    """Homogeneous difference p - q, i.e. det [[xp, xq], [wp, wq]]."""
    return p[0] * q[1] - q[0] * p[1]


def cross_ratio(a, b, c, d) -> float | _ProjectiveInfinity:
    """Cross ratio [a:b:c:d] = (c-a)/(c-b) * (d-b)/(d-a) on the projective line.

    Arguments may be real numbers or ``INFINITY``; the convention gives
    [t:1:0:INFINITY] = t.  Raises DegenerateCrossRatio when two of the four
    points coincide within tolerance.
    """
    pts = [_homog1(v) for v in (a, b, c, d)]
    scale = max(abs(p[0]) for p in pts) + 1.0
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(_diff1(pts[i], pts[j])) <= EPS_DET * scale:
                raise DegenerateCrossRatio(
                    f"cross ratio arguments {i} and {j} coincide"
                )
    pa, pb, pc, pd = pts
    num = _diff1(pc, pa) * _diff1(pd, pb)
    den = _diff1(pc, pb) * _diff1(pd, pa)
    if abs(den) <= EPS_DET * scale * scale:
        return INFINITY
    return num / den


@dataclass(frozen=True)
class ProjTransform:
    """A projective transformation of the plane, a 3x3 matrix up to scale."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise DegenerateConfiguration("projective transform must be 3x3")
        norm = np.linalg.norm(m)
        if norm == 0.0 or abs(np.linalg.det(m)) <= EPS_DET * norm**3:
            raise DegenerateConfiguration("projective transform is singular")
        object.__setattr__(self, "matrix", m)

    @staticmethod
    def identity() -> "ProjTransform":
        return ProjTransform(np.eye(3))

    def inverse(self) -> "ProjTransform":
        return ProjTransform(np.linalg.inv(self.matrix))

    def compose(self, other: "ProjTransform") -> "ProjTransform":
        """The transform applying ``other`` first, then ``self``."""
        return ProjTransform(self.matrix @ other.matrix)

    def apply(self, point: Vec2) -> Vec2:
        w = self.matrix @ np.array([point[0], point[1], 1.0])
        scale = np.abs(w).max()
        if scale == 0.0 or abs(w[2]) <= EPS_DET * scale:
            raise DegenerateConfiguration(f"point {point} maps to infinity")
        return (w[0] / w[2], w[1] / w[2])

    def apply_many(self, points: Iterable[Vec2]) -> list[Vec2]:
        return [self.apply(p) for p in points]


def _frame_matrix(points: Sequence[Vec2]) -> np.ndarray:
    """3x3 matrix sending the standard projective frame to four given points."""
    if len(points) != 4:
        raise DegenerateConfiguration("exactly four points are required")
    hom = np.array([[p[0], p[1], 1.0] for p in points]).T  # 3 x 4
    norms = np.linalg.norm(hom, axis=0)
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                det = wedge3(hom[:, i], hom[:, j], hom[:, k])
                if abs(det) <= EPS_CONVEX * norms[i] * norms[j] * norms[k]:
                    raise DegenerateConfiguration(
                        f"points {i}, {j}, {k} are collinear"
                    )
    coeffs = np.linalg.solve(hom[:, :3], hom[:, 3])
    return hom[:, :3] * coeffs


def transform_from_correspondence(
    src: Sequence[Vec2], dst: Sequence[Vec2]
) -> ProjTransform:
    """The unique projective map sending four source points to four targets.

    Both quadruples must be in general position (no three collinear).  The
    returned transform satisfies ``apply(src[i]) == dst[i]`` up to roundoff.
    """
    m_src = _frame_matrix(src)
    m_dst = _frame_matrix(dst)
    return ProjTransform(m_dst @ np.linalg.inv(m_src))


def _signed_area(vertices: Sequence[Vec2]) -> float:
    acc = 0.0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        acc += x0 * y1 - x1 * y0
    return 0.5 * acc


@dataclass(frozen=True)
class ConvexPolygon:
    """A bounded, strictly convex polygon with counter-clockwise vertices.

    Input orientation is normalized on construction: clockwise vertex lists
    are reversed.  Vertex labels are otherwise preserved.
    """

    vertices: tuple[Vec2, ...]

    def __init__(self, vertices: Iterable[Vec2]):
        verts = [(float(x), float(y)) for x, y in vertices]
        if len(verts) < 3:
            raise DegenerateConfiguration("a polygon needs at least 3 vertices")
        if _signed_area(verts) < 0.0:
            verts.reverse()
        n = len(verts)
        for i in range(n):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % n]
            cx, cy = verts[(i + 2) % n]
            e1 = (bx - ax, by - ay)
            e2 = (cx - bx, cy - by)
            l1 = math.hypot(*e1)
            l2 = math.hypot(*e2)
            if l1 <= 0.0 or l2 <= 0.0:
                raise DegenerateConfiguration("repeated polygon vertex")
            cross = e1[0] * e2[1] - e1[1] * e2[0]
            if cross <= EPS_CONVEX * l1 * l2:
                raise DegenerateConfiguration(
                    f"polygon is not strictly convex at vertex {(i + 1) % n}"
                )
        object.__setattr__(self, "vertices", tuple(verts))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def diameter(self) -> float:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return math.hypot(max(xs) - min(xs), max(ys) - min(ys))

    def edges(self) -> list[tuple[Vec2, Vec2]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def contains(self, point: Vec2, margin: float = 0.0) -> bool:
        """True when ``point`` is inside, at signed distance > ``margin`` from
        every edge (``margin`` in absolute units; 0 accepts boundary points)."""
        px, py = point
        for (ax, ay), (bx, by) in self.edges():
            ex, ey = bx - ax, by - ay
            el = math.hypot(ex, ey)
            if (ex * (py - ay) - ey * (px - ax)) / el <= margin:
                return False
        return True

    def centroid(self) -> Vec2:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return (sum(xs) / len(xs), sum(ys) / len(ys))

    def translate(self, offset: Vec2) -> "ConvexPolygon":
        ox, oy = offset
        return ConvexPolygon([(x + ox, y + oy) for x, y in self.vertices])


def shoelace_area(polygon: ConvexPolygon) -> float:
    """Euclidean area of a convex polygon by the shoelace formula."""
    return _signed_area(polygon.vertices)


def line_intersect(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> Vec2:
    """Intersection of line(p1,p2) with line(q1,q2); error if near-parallel."""
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (q2[0] - q1[0], q2[1] - q1[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    scale = math.hypot(*d1) * math.hypot(*d2)
    if scale == 0.0 or abs(den) <= EPS_CONVEX * scale:
        raise DegenerateConfiguration("lines are parallel or degenerate")
    t = ((q1[0] - p1[0]) * d2[1] - (q1[1] - p1[1]) * d2[0]) / den
    return (p1[0] + t * d1[0], p1[1] + t * d1[1])


def point_on_segment(
    point: Vec2, a: Vec2, b: Vec2, *, strict: bool = False
) -> bool:
    """Whether ``point`` lies on segment [a, b] within relative tolerance.

    With ``strict=True`` the endpoints are excluded (open segment).
    """
    ex, ey = b[0] - a[0], b[1] - a[1]
    length = math.hypot(ex, ey)
    if length == 0.0:
        raise DegenerateConfiguration("segment endpoints coincide")
    px, py = point[0] - a[0], point[1] - a[1]
    offline = abs(ex * py - ey * px) / length
    pscale = max(length, math.hypot(px, py))
    if offline > EPS_CONVEX * pscale:
        return False
    s = (ex * px + ey * py) / (length * length)
    lo = EPS_CONVEX if strict else -EPS_CONVEX
    return lo <= s <= 1.0 - lo


def polygon_contains(
    polygon: ConvexPolygon, point: Vec2, *, strict: bool = True
) -> bool:
    """Containment test with the centralized relative tolerance."""
    margin = EPS_CONVEX * polygon.diameter
    return polygon.contains(point, margin if strict else -margin)


class CentrallySymmetricPolygon:
    """An origin-symmetric convex polygon, stored by its upper half.

    ``half`` lists the vertices strictly above the horizontal axis, or on its
    non-negative part, ordered left to right; the full polygon is the set of
    ``half`` vertices and their negatives.
    """

    __slots__ = ("half",)

    def __init__(self, half: Iterable[Vec2]):
        half = tuple((float(x), float(y)) for x, y in half)
        if len(half) < 2:
            raise DegenerateConfiguration(
                "a symmetric polygon needs at least 2 half-vertices"
            )
        scale = max(math.hypot(*v) for v in half)
        tol = EPS_CONVEX * scale
        for x, y in half:
            if y < -tol or (abs(y) <= tol and x <= 0.0):
                raise DegenerateConfiguration(
                    "half-vertices must lie in the upper half plane or on the "
                    "non-negative horizontal axis"
                )
        for (x0, _), (x1, _) in zip(half, half[1:]):
            if x1 < x0 - tol:
                raise DegenerateConfiguration(
                    "half-vertices must be ordered left to right"
                )
        full = list(half) + [(-x, -y) for x, y in half]
        # Full polygon must be convex with the origin interior; ConvexPolygon
        # validates convexity, then symmetry gives the origin as the center.
        ordered = sorted(full, key=lambda v: math.atan2(v[1], v[0]))
        poly = ConvexPolygon(ordered)
        if not poly.contains((0.0, 0.0), EPS_CONVEX * scale):
            raise OriginNotInterior("origin is not interior to the polygon")
        self.half = half

    @classmethod
    def from_vertices(cls, points: Iterable[Vec2]) -> "CentrallySymmetricPolygon":
        """Build from a full +/- symmetric vertex set, merging duplicates."""
        pts = [(float(x), float(y)) for x, y in points]
        if not pts:
            raise DegenerateConfiguration("empty vertex set")
        scale = max(math.hypot(*v) for v in pts)
        if scale == 0.0:
            raise DegenerateConfiguration("all vertices are zero")
        tol = 1e-12 * scale
        pts.sort(key=lambda v: math.atan2(v[1], v[0]))
        merged: list[Vec2] = []
        for p in pts:
            if merged and math.hypot(p[0] - merged[-1][0], p[1] - merged[-1][1]) <= tol:
                continue
            merged.append(p)
        if len(merged) > 1 and math.hypot(
            merged[0][0] - merged[-1][0], merged[0][1] - merged[-1][1]
        ) <= tol:
            merged.pop()
        if len(merged) % 2 != 0:
            raise DegenerateConfiguration("vertex set is not symmetric")
        k = len(merged) // 2
        for i in range(k):
            ax, ay = merged[i]
            bx, by = merged[i + k]
            if math.hypot(ax + bx, ay + by) > EPS_CONVEX * scale:
                raise DegenerateConfiguration("vertex set is not symmetric")
        axis_tol = EPS_CONVEX * scale
        upper = [
            (i, v)
            for i, v in enumerate(merged)
            if v[1] > axis_tol or (abs(v[1]) <= axis_tol and v[0] > 0.0)
        ]
        if len(upper) != k:
            raise DegenerateConfiguration("vertex set is not symmetric")
        idx = [i for i, _ in upper]
        # The upper arc must be contiguous in the cyclic angular order.
        start = 0
        for j in range(len(idx)):
            prev = idx[(j - 1) % len(idx)]
            if (idx[j] - prev) % len(merged) != 1:
                start = j
        arc = [upper[(start + j) % len(upper)][1] for j in range(len(upper))]
        # Counter-clockwise along the upper arc runs right to left; the stored
        # convention is left to right.
        return cls(tuple(reversed(arc)))

    @property
    def k(self) -> int:
        return len(self.half)

    def full_vertices(self) -> tuple[Vec2, ...]:
        """All 2k vertices in counter-clockwise order."""
        forward = list(reversed(self.half))
        return tuple(forward + [(-x, -y) for x, y in forward])

    def full_polygon(self) -> ConvexPolygon:
        return ConvexPolygon(self.full_vertices())

    def area(self) -> float:
        return shoelace_area(self.full_polygon())

    def __repr__(self) -> str:
        return f"CentrallySymmetricPolygon(half={self.half!r})"
