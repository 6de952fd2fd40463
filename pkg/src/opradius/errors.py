"""Exception hierarchy shared by every module of the package."""


class OpRadiusError(ValueError):
    """Base class for invalid input to any public operation."""


class ShapeError(OpRadiusError):
    """Matrix or vector has the wrong shape, or two operands do not conform."""


class NonFiniteError(OpRadiusError):
    """An entry is NaN or infinite."""


class NotHermitianError(OpRadiusError):
    """Matrix deviates from its adjoint beyond the accepted tolerance."""


class ZeroOperatorError(OpRadiusError):
    """Operation is undefined for the zero matrix."""


class RhoError(OpRadiusError):
    """rho lies outside (0, 2]."""


class RhoConditioningError(RhoError):
    """rho is inside (0, 2] but below the supported conditioning floor."""


class NonUnitVectorError(OpRadiusError):
    """A vector that must have unit norm does not."""
