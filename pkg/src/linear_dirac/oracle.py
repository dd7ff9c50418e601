"""Finite-difference ground truth for the closed-form spectrum.

Each region's second-order problem psi'' + U psi = eps psi is rewritten as

    (-d^2/dx^2 + W(x)) psi = mu psi,   W = -U = a2 x^2 + a1 x + a0,  mu = -eps,

discretized with central differences and Dirichlet walls, and its lowest
eigenvalues are extracted by Sturm bisection. Completing the square gives the
exact spectrum of the same operator, which checks the grid independently.

Pairing convention for the audit: closed-form level n is compared with
oscillator state j = 2n, the state represented by the terminating even
series of order n.
"""
from __future__ import annotations

import dataclasses
import json
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DomainTooSmallWarning, InvalidParameterError
from .solution import (
    EnergyLevel,
    PotentialParams,
    Region,
    Sign,
    coefficients,
    energy_level,
    quantization_residual,
)
from .tridiag import SymTridiagonal, check_domain, lowest_eigenvalues

__all__ = [
    "Component",
    "Classification",
    "GridSpec",
    "EpsilonMap",
    "EffectiveProblem",
    "PartnerPairing",
    "LevelRecord",
    "VerificationReport",
    "default_grid",
    "effective_problem",
    "completed_square_spectrum",
    "discretize",
    "lowest_eigenvalues",
    "oracle_levels",
    "partner_pairing_check",
    "verify_levels",
    "DEFAULT_HALF_WIDTH",
    "DEFAULT_POINTS",
    "DEFAULT_K",
    "REPORT_TOLERANCE",
]

DEFAULT_HALF_WIDTH = 15.0
DEFAULT_POINTS = 4001
DEFAULT_K = 8
DEFAULT_NMAX = 3
REPORT_TOLERANCE = 1e-3


class Component(str, Enum):
    UPPER = "Upper"
    LOWER = "Lower"


class Classification(str, Enum):
    MATCH = "Match"
    SIGN_FLIP = "SignFlip"
    MISMATCH = "Mismatch"
    NON_REAL_FORMULA = "NonRealFormula"
    NON_REAL_ORACLE = "NonRealOracle"


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [-half_width, half_width] with ``points`` nodes (odd, >= 3)."""

    half_width: float
    points: int

    def __post_init__(self):
        if not (math.isfinite(self.half_width) and self.half_width > 0):
            raise InvalidParameterError(f"half_width must be positive, got {self.half_width!r}")
        if int(self.points) != self.points or self.points < 3 or self.points % 2 == 0:
            raise InvalidParameterError(f"points must be an odd integer >= 3, got {self.points!r}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.points - 1)

    def interior(self) -> np.ndarray:
        i = np.arange(1, self.points - 1)
        return -self.half_width + i * self.spacing


def default_grid(
    params: PotentialParams,
    half_width: float = DEFAULT_HALF_WIDTH,
    points: int = DEFAULT_POINTS,
) -> GridSpec:
    """Grid whose half-width is ``half_width`` oscillator lengths alpha1**(-1/4)."""
    length = coefficients(params, params.rest_energy).alpha1 ** -0.25
    return GridSpec(half_width * length, points)


class EpsilonMap(NamedTuple):
    m: float
    c: float
    hbar: float

    def epsilon(self, mu):
        return -mu

    def energy_squared(self, mu):
        """E^2 = m^2 c^4 + (hbar c)^2 eps with eps = -mu."""
        return (self.m * self.c**2) ** 2 - (self.hbar * self.c) ** 2 * mu

    def mu_from_energy_squared(self, e_sq):
        return ((self.m * self.c**2) ** 2 - e_sq) / (self.hbar * self.c) ** 2


@dataclass(frozen=True)
class EffectiveProblem:
    component: Component
    region: Region
    quadratic: tuple[float, float, float]
    epsilon_map: EpsilonMap

    def potential(self, x):
        a2, a1, a0 = self.quadratic
        return (a2 * x + a1) * x + a0


def _partner_sign(region: Region, component: Component) -> int:
    # +1 for the partner carrying B+1: upper on x > 0, lower on x < 0.
    positive = region is Region.POSITIVE_X
    upper = component is Component.UPPER
    return 1 if positive == upper else -1


def effective_problem(region: Region, component: Component, params: PotentialParams) -> EffectiveProblem:
    region, component = Region(region), Component(component)
    m, c, hbar, V0, gamma = params.m, params.c, params.hbar, params.V0, params.gamma
    hc = params.hbar_c
    a2 = (gamma / hc) ** 2
    a1 = (2.0 * gamma / hbar**2) * (V0 / c**2 - m)
    base = (V0 / hbar**2) * (V0 / c**2 - 2.0 * m)
    a0 = base + _partner_sign(region, component) * gamma / hc
    return EffectiveProblem(component, region, (a2, a1, a0), EpsilonMap(m, c, hbar))


def completed_square_spectrum(problem: EffectiveProblem, k: int) -> np.ndarray:
    """Exact mu_j = 2 sqrt(a2) (j + 1/2) + a0 - a1^2/(4 a2), j = 0..k-1."""
    a2, a1, a0 = problem.quadratic
    if not a2 > 0:
        raise InvalidParameterError("completing the square needs a2 > 0")
    j = np.arange(k)
    return 2.0 * math.sqrt(a2) * (j + 0.5) + a0 - a1 * a1 / (4.0 * a2)


def discretize(problem: EffectiveProblem, grid: GridSpec) -> SymTridiagonal:
    h = grid.spacing
    x = grid.interior()
    diagonal = 2.0 / h**2 + problem.potential(x)
    offdiagonal = np.full(x.size - 1, -1.0 / h**2)
    return SymTridiagonal(diagonal, offdiagonal, x)


def _grid_spectrum(problem: EffectiveProblem, grid: GridSpec, k: int) -> np.ndarray:
    op = discretize(problem, grid)
    mu = lowest_eigenvalues(op, k)
    check_domain(op, mu)
    return mu


def _level(j: int, region: Region, e_sq: float) -> EnergyLevel:
    real = bool(e_sq >= 0)
    return EnergyLevel(j, region, Sign.PLUS, float(e_sq), math.sqrt(e_sq) if real else None, real)


def oracle_levels(region: Region, params: PotentialParams, k: int, grid: GridSpec) -> list[EnergyLevel]:
    """Grid levels of the region's upper problem, ordered by oscillator index j."""
    region = Region(region)
    problem = effective_problem(region, Component.UPPER, params)
    mu = _grid_spectrum(problem, grid, k)
    e_sq = problem.epsilon_map.energy_squared(mu)
    return [_level(j, region, v) for j, v in enumerate(e_sq)]


@dataclass(frozen=True)
class PartnerPairing:
    region: Region
    expected_shift: float
    shift: float
    max_abs_delta: float
    spread: float
    offset: int
    discarded: int
    plus_mu: tuple[float, ...]
    minus_mu: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "region": self.region.value,
            "expected_shift": self.expected_shift,
            "shift": self.shift,
            "max_abs_delta": self.max_abs_delta,
            "spread": self.spread,
            "offset": self.offset,
            "discarded": self.discarded,
            "plus_mu": list(self.plus_mu),
            "minus_mu": list(self.minus_mu),
        }


def partner_pairing_check(region: Region, params: PotentialParams, k: int, grid: GridSpec) -> PartnerPairing:
    """Compare the grid spectra of the region's two partner problems.

    ``shift`` is the mean of mu(B+1 partner) - mu(B-1 partner) over the best
    one-to-one pairing, where the pairing may drop one extremal level from
    each sequence (offset +-1) if that makes the differences more uniform.
    """
    region = Region(region)
    problems = {comp: effective_problem(region, comp, params) for comp in Component}
    spectra = {comp: _grid_spectrum(problems[comp], grid, k) for comp in Component}
    if _partner_sign(region, Component.UPPER) > 0:
        plus, minus = spectra[Component.UPPER], spectra[Component.LOWER]
    else:
        plus, minus = spectra[Component.LOWER], spectra[Component.UPPER]

    best = None
    for offset in (0, 1, -1):
        if offset >= 0:
            diffs = plus[: k - offset] - minus[offset:]
        else:
            diffs = plus[-offset:] - minus[: k + offset]
        if diffs.size == 0:
            continue
        spread = float(np.max(diffs) - np.min(diffs))
        if best is None or spread < best[1]:
            best = (offset, spread, diffs)
    offset, spread, diffs = best
    return PartnerPairing(
        region=region,
        expected_shift=2.0 * params.gamma / params.hbar_c,
        shift=float(np.mean(diffs)),
        max_abs_delta=float(np.max(np.abs(diffs))),
        spread=spread,
        offset=offset,
        discarded=abs(offset),
        plus_mu=tuple(float(v) for v in plus),
        minus_mu=tuple(float(v) for v in minus),
    )


@dataclass(frozen=True)
class LevelRecord:
    n: int
    region: Region
    oracle_index: int
    formula_E_squared: float
    oracle_E_squared: float
    closed_square_E_squared: float
    reflected_oracle_E_squared: float
    oracle_mu: float
    closed_square_mu: float
    oracle_vs_closed_square: float
    abs_diff: float
    rel_diff: float
    quantization_residual: float | None
    classification: Classification
    cross_region_sign_flip: bool = False

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "region": self.region.value,
            "oracle_index": self.oracle_index,
            "formula_E_squared": self.formula_E_squared,
            "oracle_E_squared": self.oracle_E_squared,
            "closed_square_E_squared": self.closed_square_E_squared,
            "reflected_oracle_E_squared": self.reflected_oracle_E_squared,
            "oracle_mu": self.oracle_mu,
            "closed_square_mu": self.closed_square_mu,
            "oracle_vs_closed_square": self.oracle_vs_closed_square,
            "abs_diff": self.abs_diff,
            "rel_diff": self.rel_diff,
            "quantization_residual": self.quantization_residual,
            "classification": self.classification.value,
            "cross_region_sign_flip": self.cross_region_sign_flip,
        }


@dataclass(frozen=True)
class VerificationReport:
    params: PotentialParams
    grid: GridSpec
    n_max: int
    mode: str
    tolerance: float
    levels: tuple[LevelRecord, ...]
    partner_check: tuple[PartnerPairing, ...]
    warnings: tuple[str, ...] = field(default=())

    def classification_counts(self) -> dict[str, int]:
        counts = {c.value: 0 for c in Classification}
        for rec in self.levels:
            counts[rec.classification.value] += 1
        return counts

    def to_dict(self) -> dict:
        p = self.params
        expected = 2.0 * p.gamma / p.hbar_c
        return {
            "params": {"m": p.m, "c": p.c, "hbar": p.hbar, "V0": p.V0, "gamma": p.gamma},
            "grid": {
                "half_width": self.grid.half_width,
                "points": self.grid.points,
                "spacing": self.grid.spacing,
            },
            "n_max": self.n_max,
            "mode": self.mode,
            "tolerance": self.tolerance,
            "levels": [rec.to_dict() for rec in self.levels],
            "classifications": self.classification_counts(),
            "partner_check": {
                "expected_shift": expected,
                "shift": float(np.mean([pc.shift for pc in self.partner_check])),
                "max_deviation": max(abs(pc.shift - expected) for pc in self.partner_check),
                "regions": [pc.to_dict() for pc in self.partner_check],
            },
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _relative(diff: float, *values: float, floor: float) -> float:
    scale = max([abs(v) for v in values] + [floor])
    return diff / scale if scale > 0 else 0.0


def _classify(formula: float, oracle: float, reflected: float, floor: float, tol: float) -> tuple[Classification, float, float]:
    abs_diff = abs(formula - oracle)
    rel_diff = _relative(abs_diff, formula, oracle, floor=floor)
    if rel_diff < tol:
        cls = Classification.MATCH
    elif _relative(abs(formula - reflected), formula, reflected, floor=floor) < tol:
        cls = Classification.SIGN_FLIP
    elif formula < 0:
        cls = Classification.NON_REAL_FORMULA
    elif oracle < 0:
        cls = Classification.NON_REAL_ORACLE
    else:
        cls = Classification.MISMATCH
    return cls, abs_diff, rel_diff


def verify_levels(
    params: PotentialParams,
    n_max: int = DEFAULT_NMAX,
    grid: GridSpec | None = None,
    tolerance: float = REPORT_TOLERANCE,
    self_consistency: bool = False,
) -> VerificationReport:
    """Audit the closed-form levels of both regions against the grid oracle.

    Mismatches are recorded, never raised. With ``self_consistency`` the
    closed-form values are replaced by the completed-square ones, which
    exercises the comparison machinery on a case that must match.
    """
    if int(n_max) != n_max or n_max < 0:
        raise InvalidParameterError(f"n_max must be a non-negative integer, got {n_max!r}")
    if grid is None:
        grid = default_grid(params)
    k = 2 * int(n_max) + 1
    rest_sq = params.rest_energy**2
    # E^2 scale below which relative differences are measured against it
    floor = max(rest_sq, params.hbar_c * abs(params.gamma))
    # E^2 = C + (gamma-linear part) with C = 2 m^2 c^4 for every level
    constant_part = 2.0 * rest_sq

    records = []
    partners = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DomainTooSmallWarning)
        for region in Region:
            problem = effective_problem(region, Component.UPPER, params)
            emap = problem.epsilon_map
            mu_grid = _grid_spectrum(problem, grid, k)
            mu_exact = completed_square_spectrum(problem, k)
            a2 = problem.quadratic[0]
            for n in range(int(n_max) + 1):
                j = 2 * n
                oracle_sq = float(emap.energy_squared(mu_grid[j]))
                closed_sq = float(emap.energy_squared(mu_exact[j]))
                if self_consistency:
                    formula_sq = closed_sq
                else:
                    formula_sq = energy_level(n, region, Sign.PLUS, params).E_squared
                reflected = 2.0 * constant_part - oracle_sq
                cls, abs_diff, rel_diff = _classify(formula_sq, oracle_sq, reflected, floor, tolerance)
                residual = None
                if formula_sq >= 0:
                    residual = quantization_residual(n, coefficients(params, math.sqrt(formula_sq)))
                osc = 2.0 * math.sqrt(a2) * (j + 0.5)
                records.append(
                    LevelRecord(
                        n=n,
                        region=region,
                        oracle_index=j,
                        formula_E_squared=formula_sq,
                        oracle_E_squared=oracle_sq,
                        closed_square_E_squared=closed_sq,
                        reflected_oracle_E_squared=reflected,
                        oracle_mu=float(mu_grid[j]),
                        closed_square_mu=float(mu_exact[j]),
                        oracle_vs_closed_square=abs(mu_grid[j] - mu_exact[j])
                        / max(abs(mu_exact[j]), osc),
                        abs_diff=abs_diff,
                        rel_diff=rel_diff,
                        quantization_residual=residual,
                        classification=cls,
                    )
                )
            partners.append(partner_pairing_check(region, params, k, grid))
    # does the formula of one region equal the reflected oracle of the other?
    by_key = {(rec.region, rec.n): rec for rec in records}
    flagged = []
    for rec in records:
        other = Region.NEGATIVE_X if rec.region is Region.POSITIVE_X else Region.POSITIVE_X
        mirror = by_key[(other, rec.n)].reflected_oracle_E_squared
        rel = _relative(abs(rec.formula_E_squared - mirror), rec.formula_E_squared, mirror, floor=floor)
        flagged.append(dataclasses.replace(rec, cross_region_sign_flip=bool(rel < tolerance)))
    records = flagged

    messages = tuple(str(w.message) for w in caught if issubclass(w.category, DomainTooSmallWarning))
    for msg in messages:
        warnings.warn(msg, DomainTooSmallWarning, stacklevel=2)
    return VerificationReport(
        params=params,
        grid=grid,
        n_max=int(n_max),
        mode="self_consistency" if self_consistency else "formula",
        tolerance=tolerance,
        levels=tuple(records),
        partner_check=tuple(partners),
        warnings=messages,
    )
