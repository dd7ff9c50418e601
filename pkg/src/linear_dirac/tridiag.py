"""Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

The inner loops are compiled with numba; a 4000x4000 operator yields its
lowest eight eigenvalues in a few milliseconds.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numba
import numpy as np
from scipy.linalg import solve_banded

from .errors import DomainTooSmallWarning, InvalidParameterError

__all__ = [
    "SymTridiagonal",
    "sturm_count",
    "lowest_eigenvalues",
    "inverse_iteration",
    "wall_amplitudes",
    "check_domain",
]

EIG_ATOL = 1e-12
EIG_RTOL = 1e-12
WALL_THRESHOLD = 1e-8
INVERSE_ITERATIONS = 3


@dataclass(frozen=True)
class SymTridiagonal:
    """Symmetric tridiagonal matrix stored as its diagonal and one off-diagonal.

    ``positions`` optionally holds the grid nodes the rows correspond to.
    """

    diagonal: np.ndarray
    offdiagonal: np.ndarray
    positions: np.ndarray | None = None

    def __post_init__(self):
        d = np.ascontiguousarray(self.diagonal, dtype=float)
        e = np.ascontiguousarray(self.offdiagonal, dtype=float)
        if d.ndim != 1 or d.size == 0:
            raise InvalidParameterError("diagonal must be a non-empty 1-D array")
        if e.shape != (d.size - 1,):
            raise InvalidParameterError("offdiagonal must have length len(diagonal) - 1")
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "offdiagonal", e)

    @property
    def dim(self) -> int:
        return self.diagonal.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + np.diag(self.offdiagonal, 1) + np.diag(self.offdiagonal, -1)

    def gershgorin(self) -> tuple[float, float]:
        radius = np.zeros(self.dim)
        radius[:-1] += np.abs(self.offdiagonal)
        radius[1:] += np.abs(self.offdiagonal)
        return float(np.min(self.diagonal - radius)), float(np.max(self.diagonal + radius))


@numba.njit(cache=False)
def _count_below(d, e2, lam, pivmin):
    # a zero pivot is read as lam sitting just below a tie, so ties are not counted
    count = 0
    q = d[0] - lam
    if abs(q) < pivmin:
        q = pivmin
    if q < 0.0:
        count += 1
    for i in range(1, d.size):
        q = d[i] - lam - e2[i - 1] / q
        if abs(q) < pivmin:
            q = pivmin
        if q < 0.0:
            count += 1
    return count


@numba.njit(cache=False)
def _bisect_lowest(d, e2, k, lo, hi, pivmin, atol, rtol):
    out = np.empty(k)
    left = lo
    for j in range(k):
        a = left
        b = hi
        for _ in range(400):
            mid = 0.5 * (a + b)
            if b - a <= max(atol, rtol * abs(mid)) or mid <= a or mid >= b:
                break
            if _count_below(d, e2, mid, pivmin) > j:
                b = mid
            else:
                a = mid
        out[j] = 0.5 * (a + b)
        # the next eigenvalue is not below this one's lower bracket
        left = a
    return out


def _pivmin(op: SymTridiagonal) -> float:
    scale = max(1.0, float(np.max(np.abs(op.diagonal))))
    if op.offdiagonal.size:
        scale = max(scale, float(np.max(op.offdiagonal**2)))
    return np.finfo(float).tiny * scale


def sturm_count(op: SymTridiagonal, lam: float) -> int:
    """Number of eigenvalues strictly below ``lam``."""
    return int(_count_below(op.diagonal, op.offdiagonal**2, float(lam), _pivmin(op)))


def lowest_eigenvalues(op: SymTridiagonal, k: int) -> np.ndarray:
    """The ``k`` algebraically smallest eigenvalues, increasing.

    Each is bracketed by bisection on the Sturm count until the bracket is
    narrower than max(1e-12, 1e-12*|lambda|).
    """
    if int(k) != k or not 1 <= k <= op.dim:
        raise InvalidParameterError(f"k must be in [1, {op.dim}], got {k!r}")
    lo, hi = op.gershgorin()
    pad = 1e-12 * max(1.0, abs(lo), abs(hi))
    return _bisect_lowest(
        op.diagonal,
        op.offdiagonal**2,
        int(k),
        lo - pad,
        hi + pad,
        _pivmin(op),
        EIG_ATOL,
        EIG_RTOL,
    )


def inverse_iteration(op: SymTridiagonal, eigenvalue: float, iterations: int = INVERSE_ITERATIONS):
    """Eigenvector for ``eigenvalue`` from a fixed number of inverse iterations.

    The seed is the all-ones vector and the shift is nudged off the
    eigenvalue by a relative 1e-10 so the banded solve stays regular.
    """
    n = op.dim
    shift = eigenvalue + 1e-10 * max(1.0, abs(eigenvalue))
    banded = np.zeros((3, n))
    banded[0, 1:] = op.offdiagonal
    banded[1] = op.diagonal - shift
    banded[2, :-1] = op.offdiagonal
    v = np.ones(n)
    for _ in range(iterations):
        v = solve_banded((1, 1), banded, v)
        v /= np.max(np.abs(v))
    return v


def wall_amplitudes(op: SymTridiagonal, eigenvalues) -> np.ndarray:
    """Largest wall-adjacent amplitude of each eigenvector, relative to its peak."""
    out = np.empty(len(eigenvalues))
    for i, lam in enumerate(eigenvalues):
        v = inverse_iteration(op, float(lam))
        out[i] = max(abs(v[0]), abs(v[-1])) / np.max(np.abs(v))
    return out


def check_domain(op: SymTridiagonal, eigenvalues, threshold: float = WALL_THRESHOLD) -> list[int]:
    """Warn (DomainTooSmallWarning) for eigenvectors that reach the walls.

    Returns the indices of the offending eigenvalues.
    """
    amps = wall_amplitudes(op, eigenvalues)
    bad = [i for i, a in enumerate(amps) if a > threshold]
    if bad:
        warnings.warn(
            f"eigenvectors {bad} have wall amplitude up to {amps[bad].max():.3g} "
            f"(threshold {threshold:g}); enlarge the domain",
            DomainTooSmallWarning,
            stacklevel=2,
        )
    return bad
