"""Closed-form bound states and zero modes for a linear scalar potential.

The pipeline runs potential -> quadratic coefficients -> reduced variables
(y, z, A, B) -> quantization -> energy levels -> Hermite-type eigenfunctions,
plus the E = 0 sector whose components are pure Gaussian exponentials.

The closed-form expressions are evaluated verbatim, including the ones the
numerical audit in :mod:`linear_dirac.oracle` shows to be inconsistent with
the underlying differential equation. Nothing here silently corrects them.

Parity naming follows the functions themselves: the ``EVEN`` basis function
is exp(-z^2/4) 1F1(-n; 1/2; z^2/2), the ``ODD`` one carries the extra factor z.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np
from scipy import integrate
from scipy.special import logsumexp

from .errors import (
    DegenerateMatchingError,
    InvalidParameterError,
    QuadratureOrderError,
)
from .specfun import gauss_hermite_rule, hermite, kummer_1f1

__all__ = [
    "Region",
    "Sign",
    "Parity",
    "NormalizationSource",
    "PotentialParams",
    "CoefficientSet",
    "ReducedQuantities",
    "EnergyLevel",
    "SweepPoint",
    "WavefunctionSamples",
    "ZeroModeFlags",
    "ZeroModeProfile",
    "potential",
    "coefficients",
    "to_y",
    "to_z",
    "quantity_A",
    "quantity_B",
    "reduced_quantities",
    "quantization_residual",
    "energy_level",
    "spectrum_sweep",
    "psi_basis",
    "hermite_form",
    "norm_constant_closed_form",
    "closed_form_hermite_prefactor",
    "norm_constant_numeric",
    "matching_coefficient",
    "eigenfunction_samples",
    "zero_mode_exponents",
    "zero_mode_components",
    "zero_mode_normalizability",
    "zero_mode_closed_form_norm",
    "zero_mode_profile",
]

MAX_BASIS_ORDER = 85
MATCHING_FLOOR = 1e-13
NORM_RTOL = 1e-8


class Region(str, Enum):
    POSITIVE_X = "PositiveX"
    NEGATIVE_X = "NegativeX"


class Sign(str, Enum):
    PLUS = "Plus"
    MINUS = "Minus"


class Parity(str, Enum):
    EVEN = "Even"
    ODD = "Odd"


class NormalizationSource(str, Enum):
    CLOSED_FORM = "ClosedForm"
    NUMERIC = "Numeric"
    ZERO_MODE_CLOSED_FORM = "ZeroModeClosedForm"


@dataclass(frozen=True)
class PotentialParams:
    """Physical constants and the potential V(x) = -V0 - gamma*x.

    Defaults are natural units (m = c = hbar = 1) with V0 = 0, gamma = 1.
    """

    m: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    V0: float = 0.0
    gamma: float = 1.0

    def __post_init__(self):
        for name in ("m", "c", "hbar", "V0", "gamma"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be finite, got {value!r}")
        if self.c <= 0 or self.hbar <= 0:
            raise InvalidParameterError("c and hbar must be positive")
        if self.m < 0:
            raise InvalidParameterError("mass must be non-negative")
        if self.gamma == 0:
            raise InvalidParameterError("gamma = 0 removes the confining term; gamma must be nonzero")

    @property
    def hbar_c(self) -> float:
        return self.hbar * self.c

    @property
    def rest_energy(self) -> float:
        return self.m * self.c**2

    def with_gamma(self, gamma: float) -> "PotentialParams":
        return dataclasses.replace(self, gamma=gamma)


@dataclass(frozen=True)
class CoefficientSet:
    """Coefficients of psi'' = (alpha1 x^2 + alpha2 x + alpha3) psi.

    ``alpha3_const`` is alpha3 with the energy term (E^2 - m^2c^4)/(hbar c)^2
    removed.
    """

    alpha1: float
    alpha2: float
    alpha3: float
    alpha3_const: float


@dataclass(frozen=True)
class ReducedQuantities:
    y: float
    z: float
    A: float
    B: float


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    region: Region
    sign: Sign
    E_squared: float
    energy: float | None
    real_flag: bool

    @property
    def n_prime(self) -> float:
        return 2 * self.n + 0.5

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "n_prime": self.n_prime,
            "region": self.region.value,
            "sign": self.sign.value,
            "E_squared": self.E_squared,
            "energy": self.energy,
            "real": self.real_flag,
        }


@dataclass(frozen=True)
class SweepPoint:
    gamma: float
    level: EnergyLevel


@dataclass(frozen=True)
class WavefunctionSamples:
    positions: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    density: np.ndarray
    norm: float
    normalization_source: NormalizationSource
    n: int
    energy: float | None = None


class ZeroModeFlags(NamedTuple):
    psi_pos: bool
    psi_neg: bool
    phi_pos: bool
    phi_neg: bool


@dataclass(frozen=True)
class ZeroModeProfile:
    """E = 0 solution data.

    Exponents are (a, b, c) triples of h(x) = a x^2 + b x + c; the upper
    component goes like exp(h), the lower like exp(-h).

    ``norm_closed_form`` evaluates the closed-form constant with the
    magnitude of its (always negative) radicand substituted, which is why
    ``closed_form_invalid`` is always set. ``norm_numeric`` is the
    normalization constant obtained by integrating the convergent pieces and
    is the one to use.
    """

    exponent_positive: tuple[float, float, float]
    exponent_negative: tuple[float, float, float]
    psi_normalizable_pos: bool
    psi_normalizable_neg: bool
    phi_normalizable_pos: bool
    phi_normalizable_neg: bool
    norm_closed_form: float | None
    closed_form_invalid: bool
    norm_numeric: float | None
    convergent_integral: float | None

    @property
    def flags(self) -> ZeroModeFlags:
        return ZeroModeFlags(
            self.psi_normalizable_pos,
            self.psi_normalizable_neg,
            self.phi_normalizable_pos,
            self.phi_normalizable_neg,
        )


# ---------------------------------------------------------------------------
# potential, coefficients, reduced variables
# ---------------------------------------------------------------------------


def potential(x, params: PotentialParams):
    """V(x) = -V0 - gamma*x."""
    return -params.V0 - params.gamma * x


def coefficients(params: PotentialParams, E: float) -> CoefficientSet:
    m, c, hbar, V0, gamma = params.m, params.c, params.hbar, params.V0, params.gamma
    hc = params.hbar_c
    epsilon = (E**2 - params.rest_energy**2) / hc**2
    alpha1 = (gamma / hc) ** 2
    alpha2 = (2.0 * gamma / hbar**2) * (V0 / c**2 - m)
    alpha3_const = (V0 / hbar**2) * (V0 / c**2 - 2.0 * m) + gamma / hc
    return CoefficientSet(alpha1, alpha2, alpha3_const + epsilon, alpha3_const)


def _scale(coeffs: CoefficientSet) -> float:
    if not coeffs.alpha1 > 0:
        raise InvalidParameterError("alpha1 must be positive")
    return (4.0 * coeffs.alpha1) ** 0.25


def to_y(x, coeffs: CoefficientSet):
    return _scale(coeffs) * x


def to_z(x, coeffs: CoefficientSet):
    """z = (4 alpha1)^(1/4) x + 2 alpha2 / (4 alpha1)^(3/4)."""
    s = _scale(coeffs)
    return s * x + 2.0 * coeffs.alpha2 / s**3


def quantity_A(coeffs: CoefficientSet) -> float:
    # alpha2 enters linearly, not squared; kept as written in the closed form.
    four_a1 = 4.0 * coeffs.alpha1
    return coeffs.alpha3 / math.sqrt(four_a1) - coeffs.alpha2 / four_a1**1.5


def quantity_B(params: PotentialParams, E: float) -> float:
    return (E**2 - params.rest_energy**2) / (params.hbar_c * params.gamma)


def reduced_quantities(x: float, params: PotentialParams, E: float) -> ReducedQuantities:
    coeffs = coefficients(params, E)
    return ReducedQuantities(
        y=to_y(x, coeffs),
        z=to_z(x, coeffs),
        A=quantity_A(coeffs),
        B=quantity_B(params, E),
    )


def quantization_residual(n: int, coeffs: CoefficientSet) -> float:
    """A/2 + 1/4 + n, which vanishes on a quantized level."""
    return quantity_A(coeffs) / 2.0 + 0.25 + n


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def energy_level(n: int, region: Region, sign: Sign, params: PotentialParams) -> EnergyLevel:
    """Closed-form level E^2 = 2n' hbar c gamma + 2 m^2 c^4 -/+ hbar c gamma.

    The last term is subtracted for x > 0 and added for x < 0. A negative
    E^2 gives a non-real level (``energy`` is None) rather than an error.
    """
    if int(n) != n or n < 0:
        raise InvalidParameterError(f"n must be a non-negative integer, got {n!r}")
    region = Region(region)
    sign = Sign(sign)
    hcg = params.hbar_c * params.gamma
    n_prime = 2 * n + 0.5
    branch = -hcg if region is Region.POSITIVE_X else hcg
    e_sq = 2.0 * n_prime * hcg + 2.0 * params.rest_energy**2 + branch
    real = e_sq >= 0
    energy = None
    if real:
        energy = math.sqrt(e_sq) if sign is Sign.PLUS else -math.sqrt(e_sq)
    return EnergyLevel(int(n), region, sign, e_sq, energy, real)


def spectrum_sweep(
    n_values: Sequence[int],
    gamma_values: Sequence[float],
    region: Region,
    params_base: PotentialParams,
) -> list[SweepPoint]:
    """Positive-branch levels over a (gamma, n) grid, ordered by gamma then n."""
    if len(n_values) == 0 or len(gamma_values) == 0:
        raise InvalidParameterError("spectrum sweep needs at least one n and one gamma")
    rows = []
    for gamma in gamma_values:
        params = params_base.with_gamma(float(gamma))
        for n in n_values:
            rows.append(SweepPoint(float(gamma), energy_level(n, region, Sign.PLUS, params)))
    return rows


# ---------------------------------------------------------------------------
# eigenfunctions
# ---------------------------------------------------------------------------


def _check_basis_order(n: int) -> int:
    if int(n) != n or n < 0:
        raise InvalidParameterError(f"n must be a non-negative integer, got {n!r}")
    if n > MAX_BASIS_ORDER:
        raise InvalidParameterError(f"n={n} exceeds the basis guard {MAX_BASIS_ORDER}")
    return int(n)


def psi_basis(n: int, z, parity: Parity):
    """Terminating parabolic-cylinder solution of order n.

    EVEN: exp(-z^2/4) 1F1(-n; 1/2; z^2/2), proportional to exp(-z^2/4) H_2n(z/sqrt2).
    ODD:  z exp(-z^2/4) 1F1(-n; 3/2; z^2/2), proportional to exp(-z^2/4) H_2n+1(z/sqrt2).
    """
    n = _check_basis_order(n)
    parity = Parity(parity)
    z = np.asarray(z, dtype=float) if not np.isscalar(z) else float(z)
    envelope = np.exp(-0.25 * z * z)
    if parity is Parity.EVEN:
        return envelope * kummer_1f1(-n, 0.5, 0.5 * z * z)
    return z * envelope * kummer_1f1(-n, 1.5, 0.5 * z * z)


def hermite_form(n: int, z):
    """exp(-z^2/4) H_2n(z/sqrt2), the Hermite rewrite of the even basis."""
    n = _check_basis_order(n)
    z = np.asarray(z, dtype=float) if not np.isscalar(z) else float(z)
    return np.exp(-0.25 * z * z) * hermite(2 * n, z / math.sqrt(2.0))


def norm_constant_closed_form(n: int) -> float:
    """N = sqrt((2n-1)! / (n 2^(2n-1) sqrt(pi))) / ((n-1)! (-1)^n), sign included.

    Undefined at n = 0 because of the (n-1)! factor.
    """
    if int(n) != n or n < 0:
        raise InvalidParameterError(f"n must be a non-negative integer, got {n!r}")
    if n == 0:
        raise InvalidParameterError(
            "closed-form normalization needs (n-1)!, which is undefined at n = 0"
        )
    n = int(n)
    radicand = math.factorial(2 * n - 1) / (n * 2.0 ** (2 * n - 1) * math.sqrt(math.pi))
    return math.sqrt(radicand) / (math.factorial(n - 1) * (-1) ** n)


def closed_form_hermite_prefactor(n: int) -> float:
    """Coefficient of exp(-z^2/4) H_2n(z/sqrt2) in the closed-form normalized state.

    That is N (-1)^n (n-1)!/(2n-1)! with N from :func:`norm_constant_closed_form`.
    """
    n_const = norm_constant_closed_form(n)
    return n_const * (-1) ** n * math.factorial(n - 1) / math.factorial(2 * n - 1)


def _quadrature_orders(n: int) -> tuple[int, int]:
    high = min(128, max(48, 2 * n + 18))
    return high - 16, high


def _even_square_integral(n: int, order: int) -> float:
    # z = sqrt(2) t turns exp(-z^2/2) into the Hermite weight exp(-t^2)
    rule = gauss_hermite_rule(order)
    t = rule.nodes
    return math.sqrt(2.0) * float(np.dot(rule.weights, kummer_1f1(-n, 0.5, t * t) ** 2))


def _odd_square_integral(n: int, order: int) -> float:
    rule = gauss_hermite_rule(order)
    t = rule.nodes
    g = kummer_1f1(-n, 1.5, t * t)
    return math.sqrt(2.0) * float(np.dot(rule.weights, 2.0 * t * t * g * g))


def _stable_integral(fn, n: int) -> float:
    low, high = _quadrature_orders(n)
    a, b = fn(n, low), fn(n, high)
    if abs(a - b) > NORM_RTOL * abs(b):
        raise QuadratureOrderError(
            f"Gauss-Hermite orders {low} and {high} disagree for n={n}: {a} vs {b}"
        )
    return b


def norm_constant_numeric(n: int, params: PotentialParams | None = None) -> float:
    """Positive c with c^2 times the integral over z of the squared even basis equal to 1.

    The integral is taken in z, so the result does not depend on ``params``;
    the argument is accepted to mirror the other eigenfunction helpers.
    """
    n = _check_basis_order(n)
    return 1.0 / math.sqrt(_stable_integral(_even_square_integral, n))


def matching_coefficient(n: int, params: PotentialParams) -> float:
    """kappa with kappa * odd(z0) = even(z0), z0 being the image of x = 0."""
    n = _check_basis_order(n)
    coeffs = coefficients(params, params.rest_energy)
    z0 = to_z(0.0, coeffs)
    odd = psi_basis(n, z0, Parity.ODD)
    if abs(odd) < MATCHING_FLOOR:
        raise DegenerateMatchingError(
            f"odd basis function vanishes at z(0)={z0:.6g}; continuity does not fix the constant"
        )
    return float(psi_basis(n, z0, Parity.EVEN) / odd)


def eigenfunction_samples(
    n: int,
    grid: Sequence[float],
    params: PotentialParams,
    E: float | None = None,
    normalization: NormalizationSource = NormalizationSource.NUMERIC,
) -> WavefunctionSamples:
    """Sample the spinor of level n on a z grid.

    The upper component is the even basis function; the lower is the
    matching coefficient times the odd partner. With NUMERIC normalization
    the pair is scaled so the full-line integral of |psi|^2 + |phi|^2 is 1;
    with CLOSED_FORM the upper component uses the closed-form Hermite
    prefactor and the lower is scaled by the same factor.
    """
    n = _check_basis_order(n)
    z = np.asarray(grid, dtype=float)
    if z.ndim != 1 or z.size == 0:
        raise InvalidParameterError("grid must be a non-empty 1-D sequence")
    if z.size > 1 and not np.all(np.diff(z) > 0):
        raise InvalidParameterError("grid must be strictly increasing")
    normalization = NormalizationSource(normalization)

    kappa = matching_coefficient(n, params)
    even = psi_basis(n, z, Parity.EVEN)
    odd = psi_basis(n, z, Parity.ODD)

    if normalization is NormalizationSource.NUMERIC:
        total = _stable_integral(_even_square_integral, n) + kappa**2 * _stable_integral(
            _odd_square_integral, n
        )
        scale = 1.0 / math.sqrt(total)
        upper = scale * even
    elif normalization is NormalizationSource.CLOSED_FORM:
        prefactor = closed_form_hermite_prefactor(n)
        upper = prefactor * hermite_form(n, z)
        # even = (-1)^n n!/(2n)! * hermite_form
        scale = prefactor * (-1) ** n * math.factorial(2 * n) / math.factorial(n)
    else:
        raise InvalidParameterError(f"{normalization.value} does not apply to bound states")

    lower = scale * kappa * odd
    density = upper * upper + lower * lower
    norm = float(np.trapezoid(density, z)) if z.size > 1 else 0.0
    return WavefunctionSamples(
        positions=z,
        upper=upper,
        lower=lower,
        density=density,
        norm=norm,
        normalization_source=normalization,
        n=n,
        energy=E,
    )


# ---------------------------------------------------------------------------
# zero modes
# ---------------------------------------------------------------------------


def zero_mode_exponents(
    params: PotentialParams,
) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
    """Quadratic coefficients of h(x) for x > 0 and x < 0."""
    hc = params.hbar_c
    quad = params.gamma**2 / (2.0 * hc)
    lin = (params.V0 - params.rest_energy) / hc
    return (quad, lin, 0.0), (-quad, lin, 0.0)


def _h(x, exponent):
    a, b, c = exponent
    return (a * x + b) * x + c


def zero_mode_components(x, params: PotentialParams):
    """Unnormalized (psi, phi) = (exp(h), exp(-h)) with the half-line h."""
    pos, neg = zero_mode_exponents(params)
    x = np.asarray(x, dtype=float)
    h = np.where(x >= 0, _h(x, pos), _h(x, neg))
    return np.exp(h), np.exp(-h)


def zero_mode_normalizability(params: PotentialParams) -> ZeroModeFlags:
    """Whether each piece of |psi|^2, |phi|^2 decays at the far end of its half-line.

    |psi|^2 = exp(2h) and |phi|^2 = exp(-2h); a piece decays when the x^2
    coefficient of its exponent is strictly negative.
    """
    pos, neg = zero_mode_exponents(params)
    return ZeroModeFlags(
        psi_pos=2.0 * pos[0] < 0,
        psi_neg=2.0 * neg[0] < 0,
        phi_pos=-2.0 * pos[0] < 0,
        phi_neg=-2.0 * neg[0] < 0,
    )


def zero_mode_closed_form_norm(params: PotentialParams) -> float:
    """Closed-form N' with |-gamma^2/(hbar c)| in place of its negative radicand."""
    hc = params.hbar_c
    root = math.sqrt(abs(-params.gamma**2 / hc))
    exponent = -((params.rest_energy - params.V0) ** 2) / (hc * params.gamma)
    try:
        inner = math.sqrt(math.pi / root) * math.exp(exponent)
    except OverflowError:
        return 0.0
    if inner == 0.0:
        return math.inf
    return inner**-0.5


def _half_line_log_integral(exponent, sign: float, positive_side: bool) -> float:
    """Log of the half-line integral of exp(2*sign*h), taken relative to its peak."""
    a, b, c = exponent
    qa, qb, qc = 2.0 * sign * a, 2.0 * sign * b, 2.0 * sign * c
    # qa < 0 on every convergent piece, so the peak is the clipped vertex
    vertex = -qb / (2.0 * qa)
    peak_x = max(vertex, 0.0) if positive_side else min(vertex, 0.0)
    peak = (qa * peak_x + qb) * peak_x + qc

    def integrand(x):
        return math.exp((qa * x + qb) * x + qc - peak)

    bounds = (0.0, math.inf) if positive_side else (-math.inf, 0.0)
    points = (0.0, peak_x) if peak_x != 0.0 else None
    if points is None:
        value, _ = integrate.quad(integrand, *bounds, epsabs=0.0, epsrel=1e-11, limit=200)
    else:
        # split at the peak so narrow Gaussians far from the origin are not missed
        inner = (0.0, peak_x) if positive_side else (peak_x, 0.0)
        outer = (peak_x, math.inf) if positive_side else (-math.inf, peak_x)
        v1, _ = integrate.quad(integrand, *inner, epsabs=0.0, epsrel=1e-11, limit=200)
        v2, _ = integrate.quad(integrand, *outer, epsabs=0.0, epsrel=1e-11, limit=200)
        value = v1 + v2
    return peak + math.log(value)


def zero_mode_profile(params: PotentialParams) -> ZeroModeProfile:
    pos, neg = zero_mode_exponents(params)
    flags = zero_mode_normalizability(params)
    logs = []
    if flags.psi_pos:
        logs.append(_half_line_log_integral(pos, 1.0, True))
    if flags.psi_neg:
        logs.append(_half_line_log_integral(neg, 1.0, False))
    if flags.phi_pos:
        logs.append(_half_line_log_integral(pos, -1.0, True))
    if flags.phi_neg:
        logs.append(_half_line_log_integral(neg, -1.0, False))
    log_total = float(logsumexp(logs)) if logs else None
    total = None if log_total is None else (math.exp(log_total) if log_total < 709.0 else math.inf)
    return ZeroModeProfile(
        exponent_positive=pos,
        exponent_negative=neg,
        psi_normalizable_pos=flags.psi_pos,
        psi_normalizable_neg=flags.psi_neg,
        phi_normalizable_pos=flags.phi_pos,
        phi_normalizable_neg=flags.phi_neg,
        norm_closed_form=zero_mode_closed_form_norm(params),
        closed_form_invalid=True,
        norm_numeric=None if log_total is None else math.exp(-0.5 * log_total),
        convergent_integral=total,
    )
