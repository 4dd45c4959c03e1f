"""Hilbert-metric geometry on convex polygons.

Distance, Finsler norms, unit tangent balls and their polar duals on bounded
convex polygons, plus Holmes-Thompson areas of inscribed polygon pairs and
the flag-tuple coordinates classifying them.
"""

from .errors import (
    DegenerateConfiguration,
    DegenerateCrossRatio,
    DomainError,
    HilbertGeomError,
    LengthMismatch,
    NoBoundedChart,
    NotGeneralPosition,
    NotPositive,
    OriginNotInterior,
    OutsideDomain,
    PointOutsideDomain,
    ToleranceNotReached,
    ZeroVector,
)
from .projective import (
    INFINITY,
    CentrallySymmetricPolygon,
    ConvexPolygon,
    ProjTransform,
    cross_ratio,
    line_intersect,
    point_on_segment,
    polygon_contains,
    shoelace_area,
    transform_from_correspondence,
    wedge3,
)
from .flags import (
    FGQuadCoords,
    Flag,
    FlagTuple,
    InscribedPair,
    NormalizedQuadParams,
    double_ratio_1,
    double_ratio_2,
    fg_to_normalized,
    flag_tuple_from_json,
    flag_tuple_to_json,
    flags_from_inscribed_pair,
    flip_diagonal,
    inscribed_pair_from_json,
    inscribed_pair_to_json,
    is_positive,
    normalized_pair,
    normalized_to_fg,
    polygons_from_flags,
    quad_coords_of,
    standard_quadruple,
    triple_ratio,
)
from .hilbert import (
    Q0,
    T0,
    TangentVector,
    dual_ball_area,
    dual_polygon,
    finsler_norm,
    hilbert_distance,
    integrand_Q0,
    integrand_T0,
    unit_ball,
)
from .closed_forms import (
    f_alpha,
    gamma_of,
    hyperbolic_quad_volume,
    hyperbolic_second_derivative_at_sym,
    li2,
    triangle_volume,
)
from .quadrature import (
    AreaResult,
    QuadratureSpec,
    ht_area,
    ht_area_region,
    integrate_region,
    region_Q_prime,
    region_T_alpha,
    region_T_beta,
    regions_Delta,
)
from .surfaces import (
    S03Params,
    asymptotic_ratio,
    quadruple_family,
    s03_area_lower_bound,
    s03_parameters,
    surface_lower_bound,
    triangle_sum_bound,
)

__version__ = "0.1.0"
