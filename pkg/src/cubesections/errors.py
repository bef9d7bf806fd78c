"""Exception types raised across the package."""


class CubeSectionsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CubeSectionsError, ValueError):
    pass


class ZeroPolynomial(CubeSectionsError, ValueError):
    pass


class NoSignChange(CubeSectionsError, ValueError):
    pass


class PrecisionExhausted(CubeSectionsError, ArithmeticError):
    pass


class IndexOutOfRange(CubeSectionsError, IndexError):
    pass


class DimensionTooSmall(CubeSectionsError, ValueError):
    pass


class AtSingularity(CubeSectionsError, ValueError):
    """Raised when t is a root of 1 - 24t^2 + 48t^4."""


class ToleranceUnreachable(CubeSectionsError, RuntimeError):
    pass


class FaceTooSmall(CubeSectionsError, ValueError):
    pass


class StraddlesGamma(CubeSectionsError, ValueError):
    pass


class OutsideCoveredRange(CubeSectionsError, ValueError):
    pass


class UndecidedRoot(CubeSectionsError, ArithmeticError):
    """A candidate root could be neither confirmed nor excluded."""
