"""Exception types raised across the package."""


class InfoPhysError(ValueError):
    """Base class for all domain errors."""


class ValidationError(InfoPhysError):
    """An input violates a documented precondition."""


class ConditioningError(InfoPhysError):
    """Conditioning on an outcome of zero probability."""


class CapacityError(InfoPhysError):
    """A configuration space or register would exceed its size cap."""


class TrajectoryError(InfoPhysError):
    """A black-hole trajectory drives the mass to zero or below."""
