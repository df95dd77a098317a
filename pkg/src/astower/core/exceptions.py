"""Module for all astower exceptions raised by the core types."""


class AsTowerError(Exception):
    """Superclass for all astower exceptions."""

    pass


class FieldError(AsTowerError):
    """Raised for invalid binary field construction or arithmetic."""

    pass


class ReducibleModulusError(FieldError, ValueError):
    """Raised when a supplied modulus is not irreducible of the given degree."""

    pass


class FieldMismatchError(FieldError, TypeError):
    """Raised when operands belong to different fields."""

    pass


class NotInvertibleError(FieldError, ZeroDivisionError):
    """Raised when inverting the zero element."""

    pass


class EmbeddingError(FieldError, ValueError):
    """Raised when ``F_4`` does not embed in the target field."""

    pass


class SeriesError(AsTowerError):
    """Base class for errors in truncated series arithmetic."""

    pass


class PrecisionError(SeriesError):
    """Raised when a result depends on terms beyond the tracked precision."""

    pass


class NoPositiveRootError(SeriesError, ValueError):
    """Raised when ``y^2 + y = c`` has no root of positive order."""

    pass


class SequenceError(AsTowerError, ValueError):
    """Raised for index sequences that break the successor or parity rules."""

    pass
