"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the geometric domain (disk, fiber, or parameter range)."""


class GlancingError(ValueError):
    """Boundary direction too close to tangency for reliable integration."""


class TrappingError(RuntimeError):
    """Geodesic failed to exit within the configured time cap."""


class NotInImageError(ValueError):
    """Requested point is not in the image of the blow-down map."""


class BoundaryDegenerateError(ValueError):
    """Blow-down inversion requested on the boundary stratum, where the map collapses geodesics."""


class ClassifierMismatchError(RuntimeError):
    """The two simplicity classifiers disagree beyond grid resolution."""
