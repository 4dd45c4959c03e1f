"""Flags in R^3, their projective invariants, and inscribed polygon pairs.

A flag is a line inside a plane through the origin of R^3, encoded by two
spanning vectors.  Positive tuples of flags correspond to pairs of nested
convex polygons with interleaved vertices; the conversions in both directions
live here, together with the coordinates classifying quadruples.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateConfiguration,
    DomainError,
    NoBoundedChart,
    NotGeneralPosition,
    NotPositive,
)
from .projective import (
    ConvexPolygon,
    Vec2,
    Vec3,
    line_intersect,
    point_on_segment,
    wedge3,
)

# Relative tolerance on normalized wedges for general-position certificates.
EPS_GENERAL_POSITION = 1e-10


def _norm3(v: Vec3) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def _cross3(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


@dataclass(frozen=True)
class Flag:
    """A point-line flag: ``e1`` spans the point, ``(e1, e2)`` span the line."""

    e1: Vec3
    e2: Vec3

    def __post_init__(self):
        e1 = tuple(float(x) for x in self.e1)
        e2 = tuple(float(x) for x in self.e2)
        n1, n2 = _norm3(e1), _norm3(e2)
        if n1 == 0.0 or n2 == 0.0:
            raise DegenerateConfiguration("flag vectors must be nonzero")
        if _norm3(_cross3(e1, e2)) <= EPS_GENERAL_POSITION * n1 * n2:
            raise DegenerateConfiguration("flag vectors are linearly dependent")
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)

    def line_normal(self) -> Vec3:
        """Normal vector of the plane spanned by ``e1`` and ``e2``."""
        return _cross3(self.e1, self.e2)


class FlagTuple:
    """An ordered tuple of at least three flags in general position.

    The stored order is the cyclic boundary order of the associated polygons;
    tuples in the wrong order fail the positivity test and are rejected by the
    geometric constructions.
    """

    __slots__ = ("flags",)

    def __init__(self, flags: Iterable[Flag]):
        flags = tuple(flags)
        if len(flags) < 3:
            raise DegenerateConfiguration("a flag tuple needs at least 3 flags")
        self.flags = flags
        _check_general_position(flags)

    def __len__(self) -> int:
        return len(self.flags)

    def __getitem__(self, i: int) -> Flag:
        return self.flags[i]

    def __iter__(self):
        return iter(self.flags)


def _unit(v: Vec3) -> Vec3:
    n = _norm3(v)
    return (v[0] / n, v[1] / n, v[2] / n)


def _check_general_position(flags: Sequence[Flag]) -> None:
    k = len(flags)
    units1 = [_unit(f.e1) for f in flags]
    units2 = [_unit(f.e2) for f in flags]
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            # F_i^2 + F_j^1 = R^3, i.e. the point of flag j avoids the line of i.
            if abs(wedge3(units1[i], units2[i], units1[j])) <= EPS_GENERAL_POSITION:
                raise NotGeneralPosition(
                    f"point of flag {j} lies on the line of flag {i}"
                )
    for i, j, l in itertools.combinations(range(k), 3):
        if abs(wedge3(units1[i], units1[j], units1[l])) <= EPS_GENERAL_POSITION:
            raise NotGeneralPosition(f"points of flags {i}, {j}, {l} are collinear")


def _wedge_checked(a: Vec3, b: Vec3, c: Vec3) -> float:
    value = wedge3(a, b, c)
    if abs(value) <= EPS_GENERAL_POSITION * _norm3(a) * _norm3(b) * _norm3(c):
        raise NotGeneralPosition("vanishing wedge in a flag invariant")
    return value


def triple_ratio(e: Flag, f: Flag, g: Flag) -> float:
    """Triple ratio of a general-position triple of flags."""
    e1, e2 = e.e1, e.e2
    f1, f2 = f.e1, f.e2
    g1, g2 = g.e1, g.e2
    return (
        _wedge_checked(e1, e2, f1)
        / _wedge_checked(f1, g1, g2)
        * _wedge_checked(e1, g1, g2)
        / _wedge_checked(e1, f1, f2)
        * _wedge_checked(f1, f2, g1)
        / _wedge_checked(e1, e2, g1)
    )


def double_ratio_1(e: Flag, f: Flag, g: Flag, h: Flag) -> float:
    """First double ratio of a general-position quadruple of flags."""
    return (
        -_wedge_checked(e.e1, g.e1, f.e1)
        / _wedge_checked(e.e1, g.e1, h.e1)
        * _wedge_checked(g.e1, g.e2, h.e1)
        / _wedge_checked(g.e1, g.e2, f.e1)
    )


def double_ratio_2(e: Flag, f: Flag, g: Flag, h: Flag) -> float:
    """Second double ratio of a general-position quadruple of flags."""
    return (
        -_wedge_checked(e.e1, e.e2, f.e1)
        / _wedge_checked(e.e1, e.e2, h.e1)
        * _wedge_checked(e.e1, g.e1, h.e1)
        / _wedge_checked(e.e1, g.e1, f.e1)
    )


def is_positive(tup: FlagTuple) -> bool:
    """Whether every order-respecting sub-triple and sub-quadruple is positive."""
    flags = tup.flags
    k = len(flags)
    for i, j, l in itertools.combinations(range(k), 3):
        if triple_ratio(flags[i], flags[j], flags[l]) <= 0.0:
            return False
    for i, j, l, m in itertools.combinations(range(k), 4):
        quad = (flags[i], flags[j], flags[l], flags[m])
        if double_ratio_1(*quad) <= 0.0 or double_ratio_2(*quad) <= 0.0:
            return False
    return True


@dataclass(frozen=True)
class InscribedPair:
    """An inner polygon ideal in an outer one, one inner vertex per outer edge.

    ``incidence[i]`` is the index of the outer edge (from ``outer.vertices[j]``
    to ``outer.vertices[j+1]``) whose open interior contains inner vertex i.
    When omitted it is derived geometrically; note that polygon construction
    normalizes vertex order to counter-clockwise, so an explicit incidence
    must refer to the normalized orders.
    """

    inner: ConvexPolygon
    outer: ConvexPolygon
    incidence: tuple[int, ...] | None = None

    def __post_init__(self):
        k = len(self.inner)
        if len(self.outer) != k:
            raise DegenerateConfiguration(
                "inner and outer polygons must have the same vertex count"
            )
        outer_edges = self.outer.edges()
        if self.incidence is None:
            incidence = []
            for i, vertex in enumerate(self.inner.vertices):
                hits = [
                    j
                    for j, (a, b) in enumerate(outer_edges)
                    if point_on_segment(vertex, a, b, strict=True)
                ]
                if len(hits) != 1:
                    raise DegenerateConfiguration(
                        f"inner vertex {i} is not interior to exactly one outer edge"
                    )
                incidence.append(hits[0])
            incidence = tuple(incidence)
        else:
            incidence = tuple(int(j) for j in self.incidence)
        if len(incidence) != k or sorted(incidence) != list(range(k)):
            raise DegenerateConfiguration(
                "incidence must hit every outer edge exactly once"
            )
        for i, vertex in enumerate(self.inner.vertices):
            a, b = outer_edges[incidence[i]]
            if not point_on_segment(vertex, a, b, strict=True):
                raise DegenerateConfiguration(
                    f"inner vertex {i} is not interior to outer edge {incidence[i]}"
                )
        object.__setattr__(self, "incidence", incidence)

    def outer_vertex_between(self, i: int, j: int) -> Vec2:
        """The outer vertex shared by the edges carrying inner vertices i, j."""
        k = len(self.inner)
        ei, ej = self.incidence[i], self.incidence[j]
        if (ei + 1) % k == ej:
            return self.outer.vertices[ej]
        if (ej + 1) % k == ei:
            return self.outer.vertices[ei]
        raise DegenerateConfiguration("inner vertices are not on adjacent edges")


def _max_margin_direction(rays: list[np.ndarray]) -> tuple[float, np.ndarray]:
    """Direction maximizing the minimal normalized inner product with rays.

    Rays are assumed sign-aligned (all in one open half-space).
    """
    units = np.array([r / np.linalg.norm(r) for r in rays])
    candidates = [units.sum(axis=0)]
    n = len(units)
    for i, j in itertools.combinations(range(n), 2):
        candidates.append(units[i] + units[j])
    for combo in itertools.combinations(range(n), 3):
        try:
            c = np.linalg.solve(units[list(combo)], np.ones(3))
        except np.linalg.LinAlgError:
            continue
        candidates.append(c)
    best_margin, best_dir = -1.0, None
    for c in candidates:
        norm = np.linalg.norm(c)
        if norm < 1e-14:
            continue
        c = c / norm
        margin = float((units @ c).min())
        if margin > best_margin:
            best_margin, best_dir = margin, c
    return best_margin, best_dir


def _bounded_chart(rays: list[Vec3]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """An affine chart whose plane avoids all vertex rays by maximal margin.

    Returns the chart normal and two orthonormal in-plane basis vectors.
    Raises NoBoundedChart when no consistent sign assignment with a healthy
    margin exists.
    """
    vecs = [np.array(r, dtype=float) for r in rays]
    units = np.array([v / np.linalg.norm(v) for v in vecs])
    # Initial signs from the dominant eigendirection, then refine.
    _, eigvecs = np.linalg.eigh(units.T @ units)
    direction = eigvecs[:, -1]
    for _ in range(3):
        signs = np.sign(units @ direction)
        signs[signs == 0.0] = 1.0
        margin, cand = _max_margin_direction(
            [s * u for s, u in zip(signs, units)]
        )
        direction = cand
    if margin <= 1e-8:
        raise NoBoundedChart(
            "vertex rays do not fit in an open half-space with usable margin"
        )
    normal = direction
    seed = np.zeros(3)
    seed[int(np.argmin(np.abs(normal)))] = 1.0
    b1 = np.cross(normal, seed)
    b1 = b1 / np.linalg.norm(b1)
    b2 = np.cross(normal, b1)
    return normal, b1, b2


def polygons_from_flags(tup: FlagTuple) -> InscribedPair:
    """The inscribed polygon pair of a positive flag tuple, in a bounded chart.

    Inner vertices are the flag points, outer vertices the successive line
    intersections; the chart is selected automatically so the outer polygon is
    bounded.
    """
    if not is_positive(tup):
        raise NotPositive("flag tuple is not positive")
    k = len(tup)
    normals = [f.line_normal() for f in tup]
    outer_rays = [_cross3(normals[i], normals[(i + 1) % k]) for i in range(k)]
    inner_rays = [f.e1 for f in tup]
    normal, b1, b2 = _bounded_chart(outer_rays + inner_rays)

    def project(v: Vec3) -> Vec2:
        arr = np.array(v, dtype=float)
        w = float(arr @ normal)
        return (float(arr @ b1) / w, float(arr @ b2) / w)

    outer_pts = [project(r) for r in outer_rays]
    inner_pts = [project(r) for r in inner_rays]
    area2 = sum(
        outer_pts[i][0] * outer_pts[(i + 1) % k][1]
        - outer_pts[(i + 1) % k][0] * outer_pts[i][1]
        for i in range(k)
    )
    if area2 < 0.0:
        # The chart basis reversed the orientation; flip one basis vector.
        outer_pts = [(x, -y) for x, y in outer_pts]
        inner_pts = [(x, -y) for x, y in inner_pts]
    outer = ConvexPolygon(outer_pts)
    inner = ConvexPolygon(inner_pts)
    # Inner vertex i sits on the line of flag i, the outer edge from vertex
    # i-1 to vertex i.
    incidence = tuple((i - 1) % k for i in range(k))
    return InscribedPair(inner=inner, outer=outer, incidence=incidence)


def flags_from_inscribed_pair(pair: InscribedPair) -> FlagTuple:
    """The positive flag tuple of an inscribed pair: point = inner vertex,
    line = the outer edge through it."""
    flags = []
    outer_edges = pair.outer.edges()
    for i, (x, y) in enumerate(pair.inner.vertices):
        a, _ = outer_edges[pair.incidence[i]]
        flags.append(Flag(e1=(x, y, 1.0), e2=(a[0], a[1], 1.0)))
    return FlagTuple(flags)


@dataclass(frozen=True)
class FGQuadCoords:
    """Triple and double ratios (t, t', d, d') of a positive quadruple."""

    t: float
    tp: float
    d: float
    dp: float

    def __post_init__(self):
        for name in ("t", "tp", "d", "dp"):
            value = float(getattr(self, name))
            if not (value > 0.0 and math.isfinite(value)):
                raise DomainError(f"{name} must be a positive real, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class NormalizedQuadParams:
    """Edge parameters (alpha1, alpha2, beta1, beta2) of the normalized pair.

    The inner quadrilateral of the normalized pair has vertices
    (beta1, 1), (-1, alpha1), (beta2, -1), (1, alpha2) inside the standard
    square with corners (+-1, +-1).
    """

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta1", "beta2"):
            value = float(getattr(self, name))
            if not (-1.0 < value < 1.0):
                raise DomainError(f"{name} must lie in (-1, 1), got {value}")
            object.__setattr__(self, name, value)

    def inner_vertices(self) -> tuple[Vec2, Vec2, Vec2, Vec2]:
        return (
            (self.beta1, 1.0),
            (-1.0, self.alpha1),
            (self.beta2, -1.0),
            (1.0, self.alpha2),
        )


def fg_to_normalized(coords: FGQuadCoords) -> NormalizedQuadParams:
    """Solve the four ratio relations of the normalized quadruple for the
    edge parameters."""
    t, tp, d, dp = coords.t, coords.tp, coords.d, coords.dp
    x = d * (1.0 + tp) / (tp * (1.0 + t))
    beta1 = (x - 1.0) / (x + 1.0)
    y = dp * (1.0 + t) / (t * (1.0 + tp))
    beta2 = (1.0 - y) / (1.0 + y)
    z = t * (1.0 + beta1) / (1.0 + beta2)
    alpha1 = (1.0 - z) / (1.0 + z)
    w = tp * (1.0 - beta2) / (1.0 - beta1)
    alpha2 = (w - 1.0) / (w + 1.0)
    return NormalizedQuadParams(alpha1=alpha1, alpha2=alpha2, beta1=beta1, beta2=beta2)


def normalized_to_fg(params: NormalizedQuadParams) -> FGQuadCoords:
    """Triple and double ratios of the normalized quadruple with the given
    edge parameters."""
    a1, a2 = params.alpha1, params.alpha2
    b1, b2 = params.beta1, params.beta2
    t = (1.0 - a1) / (1.0 + a1) * (1.0 + b2) / (1.0 + b1)
    tp = (1.0 + a2) / (1.0 - a2) * (1.0 - b1) / (1.0 - b2)
    d = (1.0 + b1) / (1.0 - b1) * tp * (1.0 + t) / (1.0 + tp)
    dp = (1.0 - b2) / (1.0 + b2) * t * (1.0 + tp) / (1.0 + t)
    return FGQuadCoords(t=t, tp=tp, d=d, dp=dp)


def flip_diagonal(coords: FGQuadCoords) -> FGQuadCoords:
    """Coordinates of the same quadruple after flipping the inner diagonal."""
    t, tp, d, dp = coords.t, coords.tp, coords.d, coords.dp
    num = 1.0 + dp + dp * t + dp * t * d
    den = 1.0 + d + d * tp + d * tp * dp
    return FGQuadCoords(
        t=tp * num / den,
        tp=t * den / num,
        d=(1.0 + dp) / (t * dp * (1.0 + d)),
        dp=(1.0 + d) / (tp * d * (1.0 + dp)),
    )


def standard_quadruple(params: NormalizedQuadParams) -> FlagTuple:
    """The normal-form flag quadruple with the given edge parameters.

    Its inner quadrilateral is inscribed in the standard square with the four
    tangency lines x = +-1, y = +-1.
    """
    a1, a2 = params.alpha1, params.alpha2
    b1, b2 = params.beta1, params.beta2
    return FlagTuple(
        [
            Flag(e1=(b1, 1.0, 1.0), e2=(1.0 - b1, 0.0, 0.0)),
            Flag(e1=(-1.0, a1, 1.0), e2=(0.0, 1.0 + a1, 0.0)),
            Flag(e1=(b2, -1.0, 1.0), e2=(1.0 + b2, 0.0, 0.0)),
            Flag(e1=(1.0, a2, 1.0), e2=(0.0, 1.0 - a2, 0.0)),
        ]
    )


def normalized_pair(params: NormalizedQuadParams) -> InscribedPair:
    """The inscribed pair of the normalized quadruple: inner vertices on the
    four sides of the standard square."""
    from .hilbert import Q0

    return InscribedPair(
        inner=ConvexPolygon(params.inner_vertices()),
        outer=Q0,
        incidence=(0, 1, 2, 3),
    )


def quad_coords_of(tup: FlagTuple) -> FGQuadCoords:
    """The (t, t', d, d') coordinates of a positive quadruple of flags."""
    if len(tup) != 4:
        raise DegenerateConfiguration("quadruple coordinates need 4 flags")
    e, f, g, h = tup.flags
    return FGQuadCoords(
        t=triple_ratio(e, f, g),
        tp=triple_ratio(e, g, h),
        d=double_ratio_1(e, f, g, h),
        dp=double_ratio_2(e, f, g, h),
    )


# ---------------------------------------------------------------------------
# JSON serialization for CLI I/O.
# ---------------------------------------------------------------------------


def flag_tuple_to_json(tup: FlagTuple) -> str:
    """Serialize as an array of 3x2 matrices, row-major."""
    matrices = [
        [[f.e1[row], f.e2[row]] for row in range(3)] for f in tup.flags
    ]
    return json.dumps({"flags": matrices})


def flag_tuple_from_json(text: str) -> FlagTuple:
    data = json.loads(text)
    flags = []
    for matrix in data["flags"]:
        if len(matrix) != 3 or any(len(row) != 2 for row in matrix):
            raise DomainError("each flag must be a 3x2 matrix")
        e1 = tuple(float(row[0]) for row in matrix)
        e2 = tuple(float(row[1]) for row in matrix)
        flags.append(Flag(e1=e1, e2=e2))
    return FlagTuple(flags)


def inscribed_pair_to_json(pair: InscribedPair) -> str:
    return json.dumps(
        {
            "inner": [list(v) for v in pair.inner.vertices],
            "outer": [list(v) for v in pair.outer.vertices],
            "incidence": list(pair.incidence),
        }
    )


def inscribed_pair_from_json(text: str) -> InscribedPair:
    data = json.loads(text)
    return InscribedPair(
        inner=ConvexPolygon([tuple(v) for v in data["inner"]]),
        outer=ConvexPolygon([tuple(v) for v in data["outer"]]),
        incidence=tuple(int(i) for i in data["incidence"]),
    )
