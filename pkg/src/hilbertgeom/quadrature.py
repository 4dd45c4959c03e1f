"""Holmes-Thompson areas by singularity-aware adaptive integration.

The engine fan-triangulates a convex region, maps each fan triangle onto the
unit square with the collapsing corner at the centroid, and refines a quadtree
of cells with tensor Gauss-Legendre rules.  The area integrand blows up at
ideal vertices (points of the region on the boundary of the ambient polygon),
so refinement concentrates there; a two-rule comparison drives the error
estimate.  Closed-form integrands are used when the outer polygon is a
triangle or quadrilateral, after projective normalization; otherwise the dual
unit ball is evaluated pointwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .closed_forms import gamma_of
from .errors import (
    DegenerateConfiguration,
    DomainError,
    ToleranceNotReached,
)
from .flags import InscribedPair, flags_from_inscribed_pair, triple_ratio
from .hilbert import (
    Q0,
    T0,
    _dual_ball_area_fast,
    integrand_Q0_array,
    integrand_T0_array,
)
from .projective import (
    ConvexPolygon,
    Vec2,
    transform_from_correspondence,
)

_STRATEGIES = ("closed_form", "general_dual_ball")

# Hard cap on integrand evaluations per integrate_region call.
MAX_EVALS = 12_000_000

_HI_ORDER = 12
_LO_ORDER = 8


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and strategy knobs for the area integrals."""

    rel_tol: float = 1e-7
    max_depth: int = 30
    strategy: str = "closed_form"

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-2):
            raise DomainError(f"rel_tol must lie in (0, 1e-2], got {self.rel_tol}")
        if not (1 <= int(self.max_depth) <= 40):
            raise DomainError(f"max_depth must lie in [1, 40], got {self.max_depth}")
        if self.strategy not in _STRATEGIES:
            raise DomainError(f"unknown strategy {self.strategy!r}")
        object.__setattr__(self, "max_depth", int(self.max_depth))


@dataclass(frozen=True)
class AreaResult:
    """An integral value with a conservative error estimate."""

    value: float
    error_estimate: float
    node_count: int


_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss01(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GAUSS_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GAUSS_CACHE[n] = ((x + 1.0) * 0.5, w * 0.5)
    return _GAUSS_CACHE[n]


@dataclass
class _Patch:
    """One fan triangle: centroid ``c`` and corners ``a``, ``b``.

    The unit square maps onto it by (u, w) -> (1-u) c + u ((1-w) a + w b),
    with Jacobian u * det(a - c, b - c).
    """

    c: Vec2
    a: Vec2
    b: Vec2
    jac: float


@dataclass
class _Cell:
    patch: int
    u0: float
    w0: float
    h: float
    depth: int
    value: float = 0.0
    err: float = 0.0


def _eval_cells(
    f: Callable, patches: Sequence[_Patch], cells: Sequence[_Cell]
) -> int:
    """Fill value/err of the cells in one vectorized sweep; returns eval count."""
    if not cells:
        return 0
    idx = np.array([c.patch for c in cells])
    u0 = np.array([c.u0 for c in cells])
    w0 = np.array([c.w0 for c in cells])
    h = np.array([c.h for c in cells])
    cx = np.array([patches[k].c[0] for k in idx])
    cy = np.array([patches[k].c[1] for k in idx])
    ax = np.array([patches[k].a[0] for k in idx])
    ay = np.array([patches[k].a[1] for k in idx])
    bx = np.array([patches[k].b[0] for k in idx])
    by = np.array([patches[k].b[1] for k in idx])
    jac = np.array([patches[k].jac for k in idx])
    results = []
    count = 0
    for order in (_HI_ORDER, _LO_ORDER):
        xn, wn = _gauss01(order)
        u = u0[:, None] + h[:, None] * xn[None, :]
        w = w0[:, None] + h[:, None] * xn[None, :]
        uu = u[:, :, None]
        ww = w[:, None, :]
        ex = (1.0 - ww) * ax[:, None, None] + ww * bx[:, None, None]
        ey = (1.0 - ww) * ay[:, None, None] + ww * by[:, None, None]
        px = (1.0 - uu) * cx[:, None, None] + uu * ex
        py = (1.0 - uu) * cy[:, None, None] + uu * ey
        vals = f(px, py) * uu * jac[:, None, None]
        results.append(h * h * np.einsum("cij,i,j->c", vals, wn, wn))
        count += px.size
    hi, lo = results
    err = np.abs(hi - lo)
    for cell, v, e in zip(cells, hi, err):
        cell.value = float(v)
        cell.err = float(e)
    return count


def _integrate_patches(
    f: Callable, patches: Sequence[_Patch], spec: QuadratureSpec
) -> AreaResult:
    cells = [_Cell(patch=k, u0=0.0, w0=0.0, h=1.0, depth=0) for k in range(len(patches))]
    node_count = _eval_cells(f, patches, cells)
    while True:
        total = math.fsum(c.value for c in cells)
        err = math.fsum(c.err for c in cells)
        target = spec.rel_tol * max(abs(total), 1e-12)
        if err <= target:
            return AreaResult(value=total, error_estimate=err, node_count=node_count)
        best = AreaResult(value=total, error_estimate=err, node_count=node_count)
        if node_count > MAX_EVALS:
            raise ToleranceNotReached(
                f"evaluation budget exhausted (error {err:.3e} > target {target:.3e})",
                result=best,
            )
        threshold = target / (2.0 * len(cells))
        keep: list[_Cell] = []
        children: list[_Cell] = []
        for cell in cells:
            if cell.err > threshold and cell.depth < spec.max_depth:
                half = cell.h * 0.5
                for du in (0.0, half):
                    for dw in (0.0, half):
                        children.append(
                            _Cell(
                                patch=cell.patch,
                                u0=cell.u0 + du,
                                w0=cell.w0 + dw,
                                h=half,
                                depth=cell.depth + 1,
                            )
                        )
            else:
                keep.append(cell)
        if not children:
            raise ToleranceNotReached(
                f"max depth reached (error {err:.3e} > target {target:.3e})",
                result=best,
            )
        node_count += _eval_cells(f, patches, children)
        cells = keep + children


def _clip_halfplane(
    vertices: Sequence[Vec2], normal: Vec2, offset: float, side: float
) -> list[Vec2]:
    """Sutherland-Hodgman clip of a convex polygon against
    side * (normal . x - offset) <= 0."""
    nx, ny = normal
    scale = math.hypot(nx, ny) * (1.0 + max(math.hypot(*v) for v in vertices))
    tol = 1e-14 * scale
    values = [side * (nx * x + ny * y - offset) for x, y in vertices]
    out: list[Vec2] = []
    n = len(vertices)
    for i in range(n):
        j = (i + 1) % n
        vi, vj = vertices[i], vertices[j]
        fi, fj = values[i], values[j]
        if fi <= tol:
            out.append(vi)
        if (fi < -tol and fj > tol) or (fi > tol and fj < -tol):
            t = fi / (fi - fj)
            out.append((vi[0] + t * (vj[0] - vi[0]), vi[1] + t * (vj[1] - vi[1])))
    return out


def _split_by_lines(
    vertices: Sequence[Vec2], lines: Iterable[tuple[Vec2, float]]
) -> list[list[Vec2]]:
    pieces = [list(vertices)]
    for normal, offset in lines:
        next_pieces: list[list[Vec2]] = []
        for piece in pieces:
            for side in (1.0, -1.0):
                clipped = _clip_halfplane(piece, normal, offset, side)
                if len(clipped) >= 3 and abs(_poly_area(clipped)) > 1e-16 * _poly_scale(piece) ** 2:
                    next_pieces.append(clipped)
        pieces = next_pieces
    return pieces


def _poly_area(vertices: Sequence[Vec2]) -> float:
    acc = 0.0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        acc += x0 * y1 - x1 * y0
    return 0.5 * acc


def _poly_scale(vertices: Sequence[Vec2]) -> float:
    return max(1.0, max(math.hypot(*v) for v in vertices))


def _patches_for_piece(vertices: Sequence[Vec2]) -> list[_Patch]:
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    scale = _poly_scale(vertices)
    patches = []
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        jac = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx)
        if abs(jac) <= 1e-15 * scale * scale:
            continue  # degenerate sliver, zero contribution
        patches.append(_Patch(c=(cx, cy), a=a, b=b, jac=jac))
    return patches


def integrate_region(
    f: Callable,
    region: ConvexPolygon,
    ideal_vertices: Iterable[int] = (),
    spec: QuadratureSpec | None = None,
    kink_lines: Iterable[tuple[Vec2, float]] = (),
) -> AreaResult:
    """Integrate ``f`` over a convex region with adaptive refinement.

    ``f`` must accept numpy arrays ``(x, y)``.  ``ideal_vertices`` are indices
    of region vertices where the integrand is singular (refinement is driven
    there by the error indicator).  ``kink_lines`` are lines
    ``normal . x = offset`` along which ``f`` is continuous but not smooth;
    the region is split along them so each piece is smooth inside.
    """
    if spec is None:
        spec = QuadratureSpec()
    ideal = set(int(i) for i in ideal_vertices)
    for i in ideal:
        if not (0 <= i < len(region)):
            raise DomainError(f"ideal vertex index {i} out of range")
    pieces = _split_by_lines(region.vertices, kink_lines)
    patches: list[_Patch] = []
    for piece in pieces:
        patches.extend(_patches_for_piece(piece))
    if not patches:
        raise DegenerateConfiguration("region has no usable area")
    return _integrate_patches(f, patches, spec)


def _pointwise(f_scalar: Callable[[float, float], float]) -> Callable:
    def wrapped(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.empty(x.shape)
        flat_x, flat_y, flat_o = x.ravel(), y.ravel(), out.ravel()
        for i in range(flat_o.size):
            flat_o[i] = f_scalar(flat_x[i], flat_y[i])
        return out

    return wrapped


_Q0_DIAGONALS = (((1.0, -1.0), 0.0), ((1.0, 1.0), 0.0))


def _diagonal_lines(outer: ConvexPolygon) -> list[tuple[Vec2, float]]:
    """Lines through non-adjacent vertex pairs, where the dual-ball area has
    directional kinks."""
    verts = outer.vertices
    k = len(verts)
    lines = []
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            (x0, y0), (x1, y1) = verts[i], verts[j]
            normal = (y1 - y0, x0 - x1)
            lines.append((normal, normal[0] * x0 + normal[1] * y0))
    return lines


def _mapped_region(
    g, region: ConvexPolygon, outer_std: ConvexPolygon
) -> tuple[ConvexPolygon, set[int]]:
    mapped = ConvexPolygon(g.apply_many(region.vertices))
    tol = 1e-8 * outer_std.diameter
    ideal = set()
    for i, v in enumerate(mapped.vertices):
        if not outer_std.contains(v, tol):
            if not outer_std.contains(v, -tol):
                raise DegenerateConfiguration(
                    "normalized region is not contained in the standard polygon"
                )
            ideal.add(i)
    return mapped, ideal


def _ht_area_quad(outer: ConvexPolygon, region: ConvexPolygon, spec: QuadratureSpec) -> AreaResult:
    g = transform_from_correspondence(outer.vertices, Q0.vertices)
    mapped, ideal = _mapped_region(g, region, Q0)
    return integrate_region(
        integrand_Q0_array, mapped, ideal, spec, kink_lines=_Q0_DIAGONALS
    )


def _ht_area_triangle(
    outer: ConvexPolygon,
    region: ConvexPolygon,
    spec: QuadratureSpec,
    src_dst: tuple[Sequence[Vec2], Sequence[Vec2]],
) -> AreaResult:
    g = transform_from_correspondence(*src_dst)
    mapped, ideal = _mapped_region(g, region, T0)
    return integrate_region(integrand_T0_array, mapped, ideal, spec)


def _ht_area_general(
    outer: ConvexPolygon, region: ConvexPolygon, spec: QuadratureSpec
) -> AreaResult:
    tol = 1e-8 * outer.diameter
    ideal = {
        i for i, v in enumerate(region.vertices) if not outer.contains(v, tol)
    }
    integrand = _pointwise(lambda x, y: _dual_ball_area_fast(outer, (x, y)))
    return integrate_region(
        integrand, region, ideal, spec, kink_lines=_diagonal_lines(outer)
    )


def ht_area_region(
    outer: ConvexPolygon, region: ConvexPolygon, spec: QuadratureSpec | None = None
) -> AreaResult:
    """Holmes-Thompson area of ``region`` inside the Hilbert geometry of
    ``outer``; the region need not be inscribed."""
    if spec is None:
        spec = QuadratureSpec()
    if spec.strategy == "closed_form" and len(outer) == 4:
        raw = _ht_area_quad(outer, region, spec)
    elif spec.strategy == "closed_form" and len(outer) == 3:
        anchor = region.centroid()
        src = (*outer.vertices, anchor)
        dst = (*T0.vertices, (2.0 / 3.0, 2.0 / 3.0))
        raw = _ht_area_triangle(outer, region, spec, (src, dst))
    else:
        raw = _ht_area_general(outer, region, spec)
    return AreaResult(
        value=raw.value / math.pi,
        error_estimate=raw.error_estimate / math.pi,
        node_count=raw.node_count,
    )


def ht_area(pair: InscribedPair, spec: QuadratureSpec | None = None) -> AreaResult:
    """Holmes-Thompson area of the inner polygon of an inscribed pair.

    Triangle and quadrilateral outers are normalized to the standard shapes
    and integrated in closed form; for a triangle the normalization also pins
    one inner vertex, matching the normal form with inner vertices (1,1),
    (1,0), (0, s).
    """
    if spec is None:
        spec = QuadratureSpec()
    if spec.strategy == "closed_form" and len(pair.outer) == 3:
        flags = flags_from_inscribed_pair(pair)
        t = triple_ratio(*flags.flags)
        s = 2.0 * t / (t + 1.0)
        inner = pair.inner.vertices
        src = (inner[0], inner[1], inner[2], pair.outer_vertex_between(0, 1))
        dst = ((1.0, 1.0), (1.0, 0.0), (0.0, s), (2.0, 0.0))
        raw = _ht_area_triangle(pair.outer, pair.inner, spec, (src, dst))
        return AreaResult(
            value=raw.value / math.pi,
            error_estimate=raw.error_estimate / math.pi,
            node_count=raw.node_count,
        )
    return ht_area_region(pair.outer, pair.inner, spec)


# ---------------------------------------------------------------------------
# Decomposition regions for the asymptotic analysis on the standard square.
# ---------------------------------------------------------------------------


def region_T_alpha(alpha: float) -> ConvexPolygon:
    """Triangle cut out by the diagonals y = +-x and the line y = alpha."""
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1) for a nondegenerate region")
    return ConvexPolygon([(0.0, 0.0), (alpha, alpha), (-alpha, alpha)])


def region_T_beta(beta: float) -> ConvexPolygon:
    """Triangle cut out by the diagonals y = +-x and the line x = beta."""
    if not (0.0 < beta < 1.0):
        raise DomainError(f"beta must lie in (0, 1) for a nondegenerate region")
    return ConvexPolygon([(0.0, 0.0), (beta, -beta), (beta, beta)])


def region_Q_prime(alpha: float, beta: float) -> ConvexPolygon:
    """Axis-aligned square of half-width gamma(alpha, beta)."""
    g = gamma_of(alpha, beta)
    return ConvexPolygon([(g, g), (-g, g), (-g, -g), (g, -g)])


def regions_Delta(alpha: float, beta: float) -> tuple[ConvexPolygon, ...]:
    """The four connected components of the inner quadrilateral minus the
    central square, one triangle at each inner vertex.

    Order: top (beta, 1), right (1, alpha), bottom (beta, -1), left
    (-1, alpha).
    """
    g = gamma_of(alpha, beta)
    d1 = ConvexPolygon(
        [
            (beta, 1.0),
            (beta - (1.0 + beta) * (1.0 - g) / (1.0 - alpha), g),
            (g, g),
        ]
    )
    d2 = ConvexPolygon(
        [
            (1.0, alpha),
            (g, g),
            (g, alpha - (1.0 + alpha) * (1.0 - g) / (1.0 - beta)),
        ]
    )
    d3 = ConvexPolygon(
        [
            (beta, -1.0),
            (beta - (1.0 + beta) * (1.0 - g) / (1.0 + alpha), -g),
            (beta + (1.0 - beta) * (1.0 - g) / (1.0 + alpha), -g),
        ]
    )
    d4 = ConvexPolygon(
        [
            (-1.0, alpha),
            (-g, -1.0 + (1.0 + alpha) * (beta + g) / (1.0 + beta)),
            (-g, 1.0 - (1.0 - alpha) * (beta + g) / (1.0 + beta)),
        ]
    )
    return (d1, d2, d3, d4)
