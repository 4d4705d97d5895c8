"""Exception types shared across the package."""


class CasimirError(Exception):
    """Base class for all package-specific errors."""


class UnsupportedAxisError(CasimirError):
    """Raised when a model or mirror cannot be evaluated on the requested frequency axis."""


class SingularCompositionError(CasimirError):
    """Raised on degenerate two-port algebra: vanishing transmission, resonant
    composition denominator, or a non-invertible 1 - S."""


class UnstableCavityError(CasimirError):
    """Raised when |r1*r2| > 1 somewhere on the imaginary axis, i.e. the
    cavity-plus-vacuum system is not stable and the force integral diverges."""


class AccuracyError(CasimirError):
    """Raised when adaptive quadrature cannot reach the requested tolerance.

    Carries the best available estimate and its error bound.
    """

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class ConfigError(CasimirError):
    """Raised on config-file syntax or semantic errors; `location` names the
    offending field path (or line/column for syntax errors)."""

    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location
