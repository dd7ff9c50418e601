"""Exception and warning types raised by the package."""


class InvalidParameterError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class OrderOutOfRangeError(InvalidParameterError):
    """A polynomial degree or quadrature order exceeds its overflow guard."""


class ConvergenceError(ArithmeticError):
    """An iterative procedure missed its tolerance within the iteration cap."""


class DivergentIntegralError(InvalidParameterError):
    """A Gaussian-type integral does not converge (leading coefficient <= 0)."""


class DegenerateMatchingError(ArithmeticError):
    """Continuity at the origin does not fix the lower/upper ratio."""


class QuadratureOrderError(ArithmeticError):
    """Two successive quadrature orders disagree beyond the accepted tolerance."""


class DomainTooSmallWarning(RuntimeWarning):
    """Eigenvector amplitude near the Dirichlet walls suggests a truncated domain."""
