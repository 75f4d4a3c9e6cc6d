"""Exception hierarchy shared by all rindler_kit modules."""


class RindlerKitError(Exception):
    """Base class for every error raised by the library."""


class DomainError(RindlerKitError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class NonIntegrableSingularity(RindlerKitError):
    """Integrand grows at least like 1/x at the origin."""


class TruncationFailure(RindlerKitError):
    """Integrand tail beyond the truncation cutoff exceeds tolerance."""


class ExtrapolationDiverged(RindlerKitError):
    """Regularized values do not settle as the regulator goes to zero."""


class OutsideWedge(DomainError):
    """Event lies outside the right Rindler wedge x1 > |x0|."""


class HorizonPoint(DomainError):
    """Event sits exactly on the horizon y = -1/a."""


class GridTooCoarse(RindlerKitError):
    """Two grid resolutions disagree beyond tolerance."""


class HorizonClipping(RindlerKitError):
    """The integration window cuts off a non-negligible part of a packet."""


class WindowTooNarrow(RindlerKitError):
    """Frequency window too small for the packet's conjugate width."""


class TDependenceResidual(RindlerKitError):
    """A correlator that must be stationary changed with worldline time."""


class SeriesNotConverged(RindlerKitError):
    """Series route could not be brought to tolerance."""


class InterpolationOutOfRange(DomainError):
    """Tabulated kernel queried beyond its sample grid."""


class DivergentStaticResponse(RindlerKitError):
    """Static response integral does not converge."""


class SizeCapExceeded(RindlerKitError):
    """Requested sweep exceeds the row cap."""


class ConfigError(RindlerKitError, ValueError):
    """Invalid run configuration."""
