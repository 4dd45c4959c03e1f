"""Thrice-punctured-sphere parameters and surface area lower bounds.

The finite-area structures on the thrice-punctured sphere are parametrized by
one double ratio ``d`` and one triple ratio ``t``; the quadruple of flags from
two adjacent ideal triangles then has coordinates (t, 1/t, d, 1/d).  Its
Holmes-Thompson area bounds the area of the structure from below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, LengthMismatch
from .closed_forms import triangle_volume
from .flags import (
    FGQuadCoords,
    FlagTuple,
    fg_to_normalized,
    standard_quadruple,
)
from .quadrature import AreaResult, QuadratureSpec, ht_area
from .flags import polygons_from_flags

_RELATION_TOL = 1e-12


@dataclass(frozen=True)
class S03Params:
    """The eight edge/triangle parameters of the balanced triangulation."""

    r1: float
    r2: float
    b1: float
    b2: float
    g1: float
    g2: float
    t1: float
    t2: float

    def __post_init__(self):
        for name in ("r1", "r2", "b1", "b2", "g1", "g2", "t1", "t2"):
            value = float(getattr(self, name))
            if not (value > 0.0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)
        products = self.relation_products()
        for label, value in products.items():
            if abs(value - 1.0) > _RELATION_TOL:
                raise DomainError(f"finite-area relation {label} violated: {value}")

    def relation_products(self) -> dict[str, float]:
        tt = self.t1 * self.t2
        return {
            "r1*g2": self.r1 * self.g2,
            "b1*r2": self.b1 * self.r2,
            "g1*b2": self.g1 * self.b2,
            "r2*g1*t1*t2": self.r2 * self.g1 * tt,
            "b1*r2*t1*t2": self.b1 * self.r2 * tt,
            "g1*b2*t1*t2": self.g1 * self.b2 * tt,
        }


def s03_parameters(d: float, t: float) -> S03Params:
    """All eight parameters from the free pair (d, t).

    The finite-area relations plus the adjacent-triangle product conditions
    pin every other parameter.
    """
    d = float(d)
    t = float(t)
    if not (d > 0.0 and t > 0.0 and math.isfinite(d) and math.isfinite(t)):
        raise DomainError("d and t must be positive reals")
    return S03Params(
        r1=d, r2=1.0 / d, b1=d, b2=1.0 / d, g1=d, g2=1.0 / d, t1=t, t2=1.0 / t
    )


def quadruple_family(d: float, t: float) -> FlagTuple:
    """Positive quadruple with coordinates (t, 1/t, d, 1/d)."""
    coords = FGQuadCoords(t=t, tp=1.0 / t, d=d, dp=1.0 / d)
    return standard_quadruple(fg_to_normalized(coords))


def s03_area_lower_bound(
    d: float, t: float, spec: QuadratureSpec | None = None
) -> AreaResult:
    """Holmes-Thompson area of the adjacent-triangle quadruple: a lower bound
    for the area of the structure with parameters (ln d, ln t)."""
    pair = polygons_from_flags(quadruple_family(d, t))
    return ht_area(pair, spec)


def asymptotic_ratio(
    d: float, t: float, spec: QuadratureSpec | None = None
) -> float:
    """Area of the (d, t) quadruple divided by ln^2(d) + ln^2(t)."""
    ld = math.log(d)
    lt = math.log(t)
    denom = ld * ld + lt * lt
    if denom == 0.0:
        raise DomainError("asymptotic ratio is undefined at (d, t) = (1, 1)")
    return s03_area_lower_bound(d, t, spec).value / denom


def surface_lower_bound(euler_char: int, triple_ratios) -> float:
    """Area lower bound for an ideally triangulated surface of negative Euler
    characteristic: 3/8 of the hyperbolic area plus the log-squared spread of
    the triangle ratios."""
    euler_char = int(euler_char)
    if euler_char >= 0:
        raise DomainError(f"Euler characteristic must be negative, got {euler_char}")
    ratios = [float(t) for t in triple_ratios]
    if len(ratios) != -2 * euler_char:
        raise LengthMismatch(
            f"expected {-2 * euler_char} triple ratios, got {len(ratios)}"
        )
    for t in ratios:
        if not (t > 0.0 and math.isfinite(t)):
            raise DomainError(f"triple ratios must be positive, got {t}")
    log_sq = math.fsum(math.log(t) ** 2 for t in ratios)
    return 0.375 * (-2.0 * math.pi * euler_char) + 3.0 / (8.0 * math.pi) * log_sq


def triangle_sum_bound(triple_ratios) -> float:
    """The same bound written as a sum of per-triangle areas."""
    return math.fsum(triangle_volume(t) for t in triple_ratios)
