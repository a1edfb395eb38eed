"""Exception types shared across the package."""


class LayerlabError(Exception):
    """Base class for all layerlab errors."""


class DomainError(LayerlabError):
    """An argument lies outside the mathematical domain of the operation."""


class MixedAngularIndex(LayerlabError):
    """Polynomial monomials do not share a common exponent difference."""


class NotAnEigenvalue(LayerlabError):
    """Requested eigenvalue is not of the form nu*(m + nu) for any nu >= 1."""


class NonIncreasingDepths(LayerlabError):
    """Jump depths are not strictly increasing and positive."""


class NotNormalized(LayerlabError):
    """Impedance increments do not sum to 1."""


class ImpedanceNotInRightHalfPlane(LayerlabError):
    """A partial sum of impedance increments has nonpositive real part."""


class PoleError(LayerlabError):
    """Moebius map evaluated at a pole (1 + w*v == 0)."""


class TruncationTooSmall(LayerlabError):
    """Requested series truncation order is too small."""


class LatticeLimitExceeded(LayerlabError):
    """Lattice enumeration would exceed the configured point cap."""


class FloatDepthWarning(UserWarning):
    """Depths were given as binary floats and converted to exact rationals."""
