"""Exceptions raised by the tower computations."""

from astower.core.exceptions import AsTowerError


class TowerError(AsTowerError):
    """Superclass for errors from the tower modules."""

    pass


class EnumerationRangeError(TowerError, ValueError):
    """Raised when a level or extension degree is outside the supported range."""

    pass


class ZetaError(TowerError):
    """Raised when point counts do not come from a curve of the given genus."""

    pass


class NonIntegralCoefficientError(ZetaError, ArithmeticError):
    """Raised when Newton's identities produce a non-integer coefficient."""

    pass


class ZetaConsistencyError(ZetaError):
    """Raised when an L-polynomial fails a consistency check."""

    pass
