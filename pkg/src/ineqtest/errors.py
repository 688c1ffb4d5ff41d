"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class MomentExistenceError(DomainError):
    """A required distribution moment does not exist for these parameters."""


class InsufficientDataError(ValueError):
    """Not enough observations for the requested computation."""


class DegenerateSampleError(ValueError):
    """A zero-variance sample where dispersion is required."""
