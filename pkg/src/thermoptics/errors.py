"""Exception and warning types raised across the package."""


class ThermopticsError(Exception):
    """Base class for numerical failures in this package."""


class NonConvergent(ThermopticsError):
    """Quadrature did not reach its tolerance within the panel budget."""


class NonFinite(ThermopticsError, ValueError):
    """An integrand or differentiated function returned NaN or Inf."""


class Overflow(ThermopticsError, OverflowError):
    """A Boltzmann weight is not representable in double precision."""


class CapExceeded(ThermopticsError, ValueError):
    """Requested system size exceeds the configured size cap."""


class DegenerateScan(ThermopticsError):
    """A parameter scan has no interior feature to locate."""


class InvalidMap(ThermopticsError, ValueError):
    """The thermo-optics correspondence was requested for a coupled model."""
