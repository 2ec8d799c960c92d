"""Exception types shared across the package."""


class CoherenceError(ValueError):
    """Base class for all errors raised by this package."""


class DimensionError(CoherenceError):
    """Operands have incompatible or non-square shapes."""


class ValidationError(CoherenceError):
    """A matrix violates a structural invariant (hermiticity, trace, ...)."""


class PositivityError(ValidationError):
    """An eigenvalue is negative beyond round-off tolerance."""


class NumericalConsistencyError(CoherenceError):
    """An analytically impossible value appeared (e.g. negative radicand)."""


class DomainError(CoherenceError):
    """A scalar argument lies outside its admissible domain."""
