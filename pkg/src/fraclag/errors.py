"""Exception and warning types shared across the package."""


class FracLagError(Exception):
    """Base class for all package errors."""


class PoleError(FracLagError, ValueError):
    """Gamma evaluated at (or within tolerance of) a non-positive integer."""


class CarrierExit(FracLagError):
    """An operator produced a term with exponent <= -1.

    ``partial`` optionally carries whatever was computed before the exit.
    """

    def __init__(self, message, exponent=None, partial=None):
        super().__init__(message)
        self.exponent = exponent
        self.partial = partial


class DomainError(FracLagError, ValueError):
    """Evaluation point outside the admissible half-open interval (a, b]."""


class UnsupportedSeries(FracLagError, ValueError):
    """Series outside the class an oracle can check to its stated accuracy."""


class DivergenceError(FracLagError):
    """Neumann iterate norm exceeded the growth guard."""

    def __init__(self, message, partial=None, term_norms=None):
        super().__init__(message)
        self.partial = partial
        self.term_norms = term_norms or []


class TruncationWarning(UserWarning):
    """Truncated series whose last retained term is not yet negligible."""
