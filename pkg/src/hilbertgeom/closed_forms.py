"""Real dilogarithm and closed-form area expressions.

Everything here is an explicit formula: the triangle area law, the
dilogarithm expression for the one-parameter symmetric family of inscribed
quadrilaterals, and the auxiliary functions driving the asymptotic estimates.
"""

from __future__ import annotations

import math

from .errors import DomainError

PI2_6 = math.pi * math.pi / 6.0
PI2_12 = math.pi * math.pi / 12.0
LN2 = math.log(2.0)


def _li2_series(x: float) -> float:
    """Power series for |x| <= 1/2 (converges to ~1e-17 in <= 60 terms)."""
    total = 0.0
    term = x
    k = 1
    while True:
        total += term / (k * k)
        if abs(term) < 1e-18 * max(1.0, abs(total)) or k > 80:
            return total
        term *= x
        k += 1


def li2(x: float) -> float:
    """Real dilogarithm Li2(x) = -integral_0^x ln(1-v)/v dv, for x <= 1.

    Series on [-1/2, 1/2]; the reflection identity maps (1/2, 1], the Landen
    identity maps [-1, -1/2), and the inversion identity maps x < -1.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"li2 argument must be finite, got {x}")
    if x > 1.0:
        raise DomainError(f"li2 is real only for x <= 1, got {x}")
    if x == 1.0:
        return PI2_6
    if x == 0.0:
        return 0.0
    if x < -1.0:
        # Li2(x) = -pi^2/6 - ln^2(-x)/2 - Li2(1/x)
        lg = math.log(-x)
        return -PI2_6 - 0.5 * lg * lg - li2(1.0 / x)
    if x > 0.5:
        # Li2(x) = pi^2/6 - ln(x) ln(1-x) - Li2(1-x)
        return PI2_6 - math.log(x) * math.log1p(-x) - _li2_series(1.0 - x)
    if x < -0.5:
        # Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2, with x/(x-1) in [1/3, 1/2]
        lg = math.log1p(-x)
        return -_li2_series(x / (x - 1.0)) - 0.5 * lg * lg
    return _li2_series(x)


def triangle_volume(t: float) -> float:
    """Holmes-Thompson area of the inscribed triangle pair with ratio ``t``."""
    t = float(t)
    if not (t > 0.0 and math.isfinite(t)):
        raise DomainError(f"triangle ratio must be positive, got {t}")
    lg = math.log(t)
    return 3.0 / (8.0 * math.pi) * (math.pi * math.pi + lg * lg)


def hyperbolic_quad_volume(d: float) -> float:
    """Holmes-Thompson area of the symmetric (hyperbolic) quadrilateral pair.

    ``d`` is the common double ratio; both triple ratios equal 1.  The value
    is symmetric under d -> 1/d, peaks at d = 1 and tends to 3*pi/8 as d goes
    to 0 or infinity.
    """
    d = float(d)
    if not (d > 0.0 and math.isfinite(d)):
        raise DomainError(f"double ratio must be positive, got {d}")
    one_plus = 1.0 + d
    bracket = (
        -li2(-2.0 * d)
        + 2.0 * li2(-d / one_plus)
        - 2.0 * li2(-one_plus)
        - 2.0 * li2(d / one_plus)
        - li2(d / (2.0 + d))
        + li2(-d / (2.0 + d))
        - 2.0 * li2(-d)
        - li2(-(1.0 + 2.0 * d))
        - 2.0 * math.log(one_plus) * math.log(2.0 * d / one_plus)
        + math.log(2.0 / one_plus)
        * (
            -3.0 * math.log(2.0 / one_plus)
            + math.log((2.0 + 4.0 * d) / one_plus)
            + math.log(4.0)
        )
        + math.log(4.0 * d / one_plus) * math.log(1.0 / (1.0 + 2.0 * d))
        + 0.5 * math.pi * math.pi
    )
    return bracket / (2.0 * math.pi)


def hyperbolic_second_derivative_at_sym() -> float:
    """Second derivative at the symmetric point of twice pi times the area.

    Closed-form value 32*ln(2)/9 + 8*ln(3) - 16, negative: the symmetric
    configuration is a local maximum of the one-parameter family.
    """
    return 32.0 * LN2 / 9.0 + 8.0 * math.log(3.0) - 16.0


def f_alpha(alpha: float) -> float:
    """The wedge integral: twice the area integral over the triangle cut out
    by the diagonals and the horizontal line at height ``alpha``.

    f(0) = 0 and f(alpha) grows like (3/4) ln^2 of the distance to 1.
    """
    alpha = float(alpha)
    if not (0.0 <= alpha < 1.0):
        raise DomainError(f"alpha must lie in [0, 1), got {alpha}")
    if alpha == 0.0:
        return 0.0
    lp = math.log1p(alpha)
    lm = math.log1p(-alpha)
    return (
        li2((1.0 - alpha) / 2.0)
        - PI2_12
        + 0.5 * LN2 * LN2
        + 0.25 * (lp * lp - 4.0 * LN2 * lm + 3.0 * lm * lm - 2.0 * lm * lp)
    )


def gamma_of(alpha: float, beta: float) -> float:
    """Height of the diagonal intersection of the clipped inner quadrilateral:
    gamma = (1 - alpha*beta) / (2 - alpha - beta), always >= max(alpha, beta)."""
    alpha = float(alpha)
    beta = float(beta)
    if not (0.0 <= alpha < 1.0 and 0.0 <= beta < 1.0):
        raise DomainError("gamma_of requires alpha, beta in [0, 1)")
    return (1.0 - alpha * beta) / (2.0 - alpha - beta)
