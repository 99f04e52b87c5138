"""Exception hierarchy shared by every qaw module."""


class QError(Exception):
    """Base class for all library errors."""


class RegimeError(QError):
    """The operation is not defined for the requested value of q."""


class CapExceeded(QError):
    """A truncation order would exceed the configured ``max_terms``."""


class DomainError(QError, ValueError):
    """An argument lies outside the domain where the formula holds."""


class NoConvergence(QError):
    """Quadrature refinement hit its node cap before meeting the tolerance."""


class TailTooLarge(QError):
    """An expansion table is too short for the requested output order."""


class DivergenceSuspected(QError):
    """A normalising series collapsed towards zero."""


class UnsupportedFamily(QError):
    """The density family cannot answer the request."""
