"""Exception types shared across the package."""


class HilbertGeomError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HilbertGeomError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateCrossRatio(DomainError):
    """Two of the four cross-ratio arguments coincide within tolerance."""


class DegenerateConfiguration(DomainError):
    """A point/line configuration is degenerate (collinear, parallel, ...)."""


class NotGeneralPosition(DomainError):
    """A tuple of flags fails the general-position requirement."""


class NotPositive(DomainError):
    """A tuple of flags is not positive."""


class NoBoundedChart(HilbertGeomError):
    """No affine chart keeping all projected vertices bounded was found."""


class PointOutsideDomain(DomainError):
    """A base point is not strictly inside the ambient convex polygon."""


class OutsideDomain(DomainError):
    """An evaluation point is outside an integrand's domain."""


class ZeroVector(DomainError):
    """A direction vector is zero where a nonzero one is required."""


class OriginNotInterior(DomainError):
    """A centrally symmetric polygon does not contain the origin."""


class LengthMismatch(DomainError):
    """A list argument has the wrong length."""


class ToleranceNotReached(HilbertGeomError):
    """Adaptive integration stopped before reaching the requested tolerance.

    The best estimate computed so far is attached as ``result``.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result
