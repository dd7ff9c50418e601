"""Dirac bound states in 1+1 dimensions for a linear scalar potential.

Closed-form spectrum, eigenfunctions and zero modes (:mod:`.solution`),
the special functions they rest on (:mod:`.specfun`), and a finite-difference
oracle that audits them (:mod:`.oracle`).
"""
from .errors import (
    ConvergenceError,
    DegenerateMatchingError,
    DivergentIntegralError,
    DomainTooSmallWarning,
    InvalidParameterError,
    OrderOutOfRangeError,
    QuadratureOrderError,
)
from .oracle import Component, GridSpec, default_grid, verify_levels
from .solution import (
    NormalizationSource,
    Parity,
    PotentialParams,
    Region,
    Sign,
    eigenfunction_samples,
    energy_level,
    zero_mode_profile,
)

__version__ = "0.1.0"
