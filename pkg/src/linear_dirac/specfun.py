"""Special functions behind the closed-form solution.

Everything here is plain floating point with no dependency beyond numpy:
Kummer's confluent hypergeometric series, physicists' Hermite and generalized
Laguerre polynomials by recurrence, a Gauss-Hermite rule built by Newton
iteration, and the two closed-form integrals used for normalization.

Polynomial evaluators accept scalars or numpy arrays for ``x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import (
    ConvergenceError,
    DivergentIntegralError,
    InvalidParameterError,
    OrderOutOfRangeError,
)

__all__ = [
    "MAX_DEGREE",
    "QuadratureRule",
    "kummer_1f1",
    "hermite",
    "laguerre",
    "gauss_hermite_rule",
    "hermite_overlap",
    "gaussian_integral",
]

MAX_DEGREE = 170
MAX_QUADRATURE_ORDER = 128

SERIES_RTOL = 1e-15
SERIES_QUIET_TERMS = 3
SERIES_MAX_TERMS = 10_000

NEWTON_TOL = 1e-14
NEWTON_MAX_ITER = 100


def _is_nonpositive_integer(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def _check_degree(n: int, name: str = "n") -> int:
    if int(n) != n or n < 0:
        raise InvalidParameterError(f"{name} must be a non-negative integer, got {n!r}")
    if n > MAX_DEGREE:
        raise OrderOutOfRangeError(f"{name}={n} exceeds the degree guard {MAX_DEGREE}")
    return int(n)


def kummer_1f1(a: float, b: float, x):
    """Confluent hypergeometric function 1F1(a; b; x).

    When ``a`` is a non-positive integer the series terminates and the exact
    finite sum is returned (this branch broadcasts over array ``x``).
    Otherwise the power series is summed until three consecutive terms fall
    below ``1e-15`` of the partial sum, with a cap of 10,000 terms.

    Raises
    ------
    InvalidParameterError
        If ``b`` is zero or a negative integer.
    ConvergenceError
        If the non-terminating series misses the truncation test.
    """
    if _is_nonpositive_integer(b):
        raise InvalidParameterError(f"1F1 undefined for b={b} (zero or negative integer)")

    if _is_nonpositive_integer(a):
        x = np.asarray(x, dtype=float) if not np.isscalar(x) else float(x)
        term = 1.0 + 0.0 * x
        total = term
        for k in range(int(-a)):
            term = term * (a + k) / (b + k) * x / (k + 1)
            total = total + term
        return total

    if not np.isscalar(x):
        return np.vectorize(lambda v: kummer_1f1(a, b, v), otypes=[float])(x)

    x = float(x)
    term = 1.0
    total = 1.0
    quiet = 0
    for k in range(SERIES_MAX_TERMS):
        term *= (a + k) / (b + k) * x / (k + 1)
        total += term
        if abs(term) < SERIES_RTOL * abs(total):
            quiet += 1
            if quiet >= SERIES_QUIET_TERMS:
                return total
        else:
            quiet = 0
    raise ConvergenceError(
        f"1F1({a}; {b}; {x}) series not converged after {SERIES_MAX_TERMS} terms"
    )


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence."""
    n = _check_degree(n)
    if not np.isscalar(x):
        x = np.asarray(x, dtype=float)
    h_prev = 1.0 + 0.0 * x
    if n == 0:
        return h_prev
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^alpha(x) by recurrence in n."""
    n = _check_degree(n)
    if not np.isscalar(x):
        x = np.asarray(x, dtype=float)
    l_prev = 1.0 + 0.0 * x
    if n == 0:
        return l_prev
    l_cur = 1.0 + alpha - x
    for k in range(1, n):
        l_prev, l_cur = l_cur, ((2 * k + 1 + alpha - x) * l_cur - (k + alpha) * l_prev) / (k + 1)
    return l_cur


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite rule for integrals against exp(-x**2) on the real line.

    ``nodes`` and ``weights`` are read-only arrays, nodes increasing.
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Approximate the integral of ``f(x) * exp(-x**2)``."""
        return float(np.dot(self.weights, f(self.nodes)))


def _orthonormal_hermite_pair(n: int, x: float) -> tuple[float, float]:
    # p_k = H_k / sqrt(2^k k! sqrt(pi)); returns (p_n, p_{n-1}).
    p_prev = 0.0
    p = math.pi ** -0.25
    for k in range(n):
        p_prev, p = p, x * math.sqrt(2.0 / (k + 1)) * p - math.sqrt(k / (k + 1)) * p_prev
    return p, p_prev


def _tricomi_guess(n: int, k: int) -> float:
    """Approximate k-th largest zero of H_n (k = 1 is the largest)."""
    target = math.pi * (4 * k - 1) / (2 * n + 1)
    lo, hi = 0.0, math.pi
    # t - sin(t) is increasing on [0, pi]
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if mid - math.sin(mid) < target:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    return math.sqrt(2 * n + 1) * math.cos(0.5 * t)


def _newton_root(n: int, x: float) -> float:
    for _ in range(NEWTON_MAX_ITER):
        p, p_prev = _orthonormal_hermite_pair(n, x)
        step = p / (math.sqrt(2.0 * n) * p_prev)
        x -= step
        if abs(step) <= NEWTON_TOL * max(1.0, abs(x)):
            return x
    raise ConvergenceError(f"Newton iteration for a zero of H_{n} did not converge near {x}")


@lru_cache(maxsize=None)
def gauss_hermite_rule(order: int) -> QuadratureRule:
    """Build the ``order``-point Gauss-Hermite rule.

    Positive zeros of H_order are seeded from Tricomi's approximation and
    polished by Newton; the negative half is the exact mirror image, so the
    node set is antisymmetric by construction. Weights use the orthonormal
    recurrence, w = 2 / (sqrt(2n) p_{n-1}(x))**2, which avoids the overflow
    of the factorial form at large order.
    """
    if int(order) != order or not 2 <= order <= MAX_QUADRATURE_ORDER:
        raise OrderOutOfRangeError(
            f"quadrature order must be an integer in [2, {MAX_QUADRATURE_ORDER}], got {order!r}"
        )
    n = int(order)
    positive = []
    for k in range(1, n // 2 + 1):
        root = _newton_root(n, _tricomi_guess(n, k))
        if root <= 0.0 or (positive and root >= positive[-1]):
            raise ConvergenceError(f"Newton for H_{n} landed on a duplicate or wrong-sign root")
        positive.append(root)
    positive.reverse()

    half = np.array(positive)
    if n % 2:
        nodes = np.concatenate([-half[::-1], [0.0], half])
    else:
        nodes = np.concatenate([-half[::-1], half])

    weights = np.empty(n)
    for i, x in enumerate(nodes):
        _, p_prev = _orthonormal_hermite_pair(n, float(x))
        weights[i] = 1.0 / (n * p_prev * p_prev)
    # mirror so that weights are exactly symmetric as well
    weights = 0.5 * (weights + weights[::-1])

    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(order=n, nodes=nodes, weights=weights)


def hermite_overlap(n: int, m: int) -> float:
    """Closed form of the integral of H_n H_m exp(-x**2): 2**n n! sqrt(pi) delta_nm."""
    n = _check_degree(n, "n")
    m = _check_degree(m, "m")
    if n != m:
        return 0.0
    return math.ldexp(float(math.factorial(n)) * math.sqrt(math.pi), n)


def gaussian_integral(a: float, b: float, c: float) -> float:
    """Integral of exp(-(a x**2 + b x + c)) over the whole line.

    Raises DivergentIntegralError unless ``a > 0``.
    """
    if not a > 0:
        raise DivergentIntegralError(f"integral diverges for quadratic coefficient a={a} <= 0")
    return math.sqrt(math.pi / a) * math.exp((b * b - 4.0 * a * c) / (4.0 * a))
