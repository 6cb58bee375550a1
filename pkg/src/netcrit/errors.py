"""Exception types raised across netcrit."""


class NetcritError(ValueError):
    """Base class for all netcrit errors."""


class InvalidParameterError(NetcritError):
    pass


class RadiusOutOfRangeError(InvalidParameterError):
    """Neighbor radius too large: the two r-blocks of a row would overlap."""


class DimensionTooSmallError(InvalidParameterError):
    pass


class DegenerateSpectrumError(NetcritError):
    """Spectrum has no nonzero eigenvalue."""


class DisconnectedTopologyError(NetcritError):
    """More than one zero eigenvalue, or a walk that cannot reach its target."""


class DegenerateModelError(NetcritError):
    """A stochastic model whose expected Laplacian is disconnected (q = 0, p = 1)."""


class SizeCapExceededError(NetcritError):
    """Dense oracle asked to build a matrix larger than its node cap."""
