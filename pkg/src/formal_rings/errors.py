"""Exception types shared across the package."""


class FormalRingsError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(FormalRingsError):
    """Operands live in different coefficient rings."""


class InexactDivisionError(FormalRingsError):
    """An exact division was requested but no quotient exists in the ring."""


class UnassignedParameterError(FormalRingsError):
    """A parameter appearing in a polynomial has no assigned value."""


class ShapeMismatchError(FormalRingsError):
    """Series operands disagree in variable count, truncation degree, or arity."""


class ConstantTermError(FormalRingsError):
    """A series that must vanish at the origin has a nonzero constant term."""


class SingularLinearPartError(FormalRingsError):
    """The linear part of a series tuple is not exactly invertible."""


class PrecisionError(FormalRingsError):
    """An operation would require coefficients beyond the stored truncation degree."""


class NonConvergenceError(FormalRingsError):
    """An iterative approximation failed to converge within its budget."""


class ExactnessError(FormalRingsError):
    """Exact (polynomial) Witt laws were requested but are unattainable."""


class SchemaError(FormalRingsError):
    """A JSON document does not conform to the interchange schema."""


class UnknownEntryError(FormalRingsError):
    """No catalog entry with the requested name."""


class InvalidParameterError(FormalRingsError):
    """A construction received a missing, extraneous, or degenerate parameter."""
