import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linear_dirac.errors import (
    ConvergenceError,
    DivergentIntegralError,
    InvalidParameterError,
    OrderOutOfRangeError,
)
from linear_dirac.specfun import (
    gauss_hermite_rule,
    gaussian_integral,
    hermite,
    hermite_overlap,
    kummer_1f1,
    laguerre,
)

SQRT_PI = math.sqrt(math.pi)


def hermite_explicit(n, x):
    """H_n from the explicit sum n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!)."""
    return math.factorial(n) * math.fsum(
        (-1) ** m * (2 * x) ** (n - 2 * m) / (math.factorial(m) * math.factorial(n - 2 * m))
        for m in range(n // 2 + 1)
    )


def laguerre_explicit(n, alpha, x):
    """L_n^alpha from the explicit sum with binomial(n+alpha, n-i) via gamma functions."""
    total = []
    for i in range(n + 1):
        binom = math.gamma(n + alpha + 1) / (math.gamma(n - i + 1) * math.gamma(alpha + i + 1))
        total.append((-1) ** i * binom * x**i / math.factorial(i))
    return math.fsum(total)


def simpson(f, lo, hi, intervals):
    x = np.linspace(lo, hi, intervals + 1)
    y = f(x)
    h = (hi - lo) / intervals
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


# --- kummer_1f1 -------------------------------------------------------------


def test_kummer_at_zero_is_one():
    assert kummer_1f1(3.7, 0.5, 0.0) == 1.0


def test_kummer_two_term_truncation():
    assert kummer_1f1(-1, 0.5, 2.0) == pytest.approx(-3.0, abs=1e-15)


def test_kummer_three_term_truncation_brute_force():
    x = 1.3
    expected = 1 + (-2 / 0.5) * x + ((-2) * (-1) / (0.5 * 1.5)) * x**2 / 2
    assert kummer_1f1(-2, 0.5, x) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize(
    "a,b,x",
    [(0.3, 0.5, 1.7), (-0.25, 1.5, 4.0), (2.5, 3.0, -6.0), (1.25, 0.5, 20.0), (-3.5, 2.0, 0.1)],
)
def test_kummer_series_against_mpmath(a, b, x):
    assert kummer_1f1(a, b, x) == pytest.approx(float(mpmath.hyp1f1(a, b, x)), rel=1e-12)


def test_kummer_terminating_broadcasts_over_arrays():
    x = np.array([0.0, 0.5, 2.0])
    np.testing.assert_allclose(kummer_1f1(-1, 0.5, x), 1 - 2 * x, rtol=1e-15)


def test_kummer_series_broadcasts_over_arrays():
    x = np.array([0.1, 1.0])
    expected = [kummer_1f1(0.5, 1.5, v) for v in x]
    np.testing.assert_allclose(kummer_1f1(0.5, 1.5, x), expected, rtol=0)


@pytest.mark.parametrize("b", [0, -1, -2.0, -7])
def test_kummer_rejects_nonpositive_integer_b(b):
    with pytest.raises(InvalidParameterError):
        kummer_1f1(0.5, b, 1.0)


def test_kummer_reports_nonconvergence():
    with pytest.raises(ConvergenceError):
        kummer_1f1(0.5, 1.0, 5e4)


# --- hermite ---------------------------------------------------------------


def test_hermite_base_cases():
    assert hermite(0, 2.4) == 1.0
    assert hermite(1, -0.7) == pytest.approx(-1.4, abs=1e-15)


def test_hermite_fourth_degree():
    assert hermite(4, 1.0) == pytest.approx(16 - 48 + 12, abs=1e-13)
    assert hermite(4, 1.0) == pytest.approx(-20.0, abs=1e-13)


@given(st.integers(0, 25), st.floats(-4, 4))
def test_hermite_matches_explicit_sum(n, x):
    assert hermite(n, x) == pytest.approx(hermite_explicit(n, x), rel=1e-9, abs=1e-9 * 2.0**n)


@pytest.mark.parametrize("x", [-2.5, -0.3, 0.7, 1.9])
@pytest.mark.parametrize("n", [1, 4, 9, 14])
def test_hermite_derivative_recurrence_grid(n, x):
    step = 1e-5
    derivative = (hermite(n, x + step) - hermite(n, x - step)) / (2 * step)
    expected = 2 * n * hermite(n - 1, x)
    assert derivative == pytest.approx(expected, rel=1e-8)


def test_hermite_accepts_arrays():
    x = np.linspace(-2, 2, 7)
    np.testing.assert_allclose(hermite(3, x), 8 * x**3 - 12 * x, rtol=1e-14, atol=1e-13)


def test_hermite_guard():
    hermite(170, 0.5)
    with pytest.raises(OrderOutOfRangeError):
        hermite(171, 0.5)
    with pytest.raises(InvalidParameterError):
        hermite(-1, 0.5)


# --- laguerre --------------------------------------------------------------


def test_laguerre_base_cases():
    assert laguerre(0, -0.5, 3.1) == 1.0
    assert laguerre(1, -0.5, 2.0) == pytest.approx(-1.5, abs=1e-15)


def test_laguerre_hermite_example():
    lhs = laguerre(3, -0.5, 0.9)
    rhs = (-1) ** 3 / (2**6 * math.factorial(3)) * hermite(6, math.sqrt(0.9))
    assert lhs == pytest.approx(rhs, rel=1e-12)


@given(st.integers(0, 12), st.floats(-0.9, 4.0), st.floats(0, 12))
def test_laguerre_matches_explicit_sum(n, alpha, x):
    expected = laguerre_explicit(n, alpha, x)
    scale = max(1.0, abs(expected), (1 + x) ** n)
    assert abs(laguerre(n, alpha, x) - expected) <= 1e-10 * scale


def test_laguerre_guard():
    with pytest.raises(OrderOutOfRangeError):
        laguerre(171, 0.0, 1.0)


# --- identities ------------------------------------------------------------

KUMMER_X = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0]


@pytest.mark.parametrize("x", KUMMER_X)
@pytest.mark.parametrize("m", range(6))
@pytest.mark.parametrize("n", range(11))
def test_kummer_laguerre_identity(n, m, x):
    lhs = kummer_1f1(-n, m + 1, x)
    rhs = math.factorial(m) * math.factorial(n) / math.factorial(m + n) * laguerre(n, m, x)
    assert lhs == pytest.approx(rhs, rel=1e-10)


@pytest.mark.parametrize("x", [0.2, 0.9, 1.7, 3.0])
@pytest.mark.parametrize("n", range(9))
def test_laguerre_hermite_identity(n, x):
    lhs = laguerre(n, -0.5, x)
    rhs = (-1) ** n / (2 ** (2 * n) * math.factorial(n)) * hermite(2 * n, math.sqrt(x))
    assert lhs == pytest.approx(rhs, rel=1e-10)


# --- gauss_hermite_rule ----------------------------------------------------


def test_two_point_rule_closed_form():
    rule = gauss_hermite_rule(2)
    np.testing.assert_allclose(rule.nodes, [-1 / math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)
    np.testing.assert_allclose(rule.weights, [SQRT_PI / 2, SQRT_PI / 2], rtol=1e-14)


def test_three_point_rule_has_zero_node():
    assert gauss_hermite_rule(3).nodes[1] == 0.0


def test_sixteen_point_rule_fourth_moment():
    value = gauss_hermite_rule(16).integrate(lambda x: x**4)
    assert value == pytest.approx(0.75 * SQRT_PI, rel=1e-12)


@pytest.mark.parametrize("order", [2, 3, 4, 7, 16, 33, 64, 100, 127, 128])
def test_rule_invariants(order):
    rule = gauss_hermite_rule(order)
    assert rule.order == order == rule.nodes.size == rule.weights.size
    assert np.all(np.diff(rule.nodes) > 0)
    np.testing.assert_allclose(rule.nodes, -rule.nodes[::-1], atol=1e-13, rtol=0)
    assert np.all(rule.weights > 0)
    assert rule.weights.sum() == pytest.approx(SQRT_PI, rel=1e-12)
    # nodes are zeros of H_order: Newton step H_n / H_n' is negligible
    step = hermite(order, rule.nodes) / (2 * order * hermite(order - 1, rule.nodes))
    assert np.max(np.abs(step)) < 1e-13 * max(1.0, np.max(np.abs(rule.nodes)))


@pytest.mark.parametrize("order", [5, 20, 64, 128])
def test_rule_agrees_with_numpy(order):
    x, w = np.polynomial.hermite.hermgauss(order)
    rule = gauss_hermite_rule(order)
    np.testing.assert_allclose(rule.nodes, x, atol=1e-12)
    np.testing.assert_allclose(rule.weights, w, rtol=1e-10, atol=0)


@pytest.mark.parametrize("k", range(21))
def test_rule_integrates_monomials(k):
    rule = gauss_hermite_rule(16)
    value = rule.integrate(lambda x: x**k)
    exact = 0.0 if k % 2 else math.gamma((k + 1) / 2)
    if exact == 0.0:
        assert abs(value) < 1e-10 * math.gamma((k + 2) / 2)
    else:
        assert value == pytest.approx(exact, rel=1e-10)


@pytest.mark.parametrize("order", [0, 1, 129, 2.5])
def test_rule_order_bounds(order):
    with pytest.raises(OrderOutOfRangeError):
        gauss_hermite_rule(order)


def test_rule_is_immutable():
    rule = gauss_hermite_rule(8)
    with pytest.raises(ValueError):
        rule.nodes[0] = 1.0
    with pytest.raises(AttributeError):
        rule.order = 9


# --- hermite_overlap -------------------------------------------------------


def test_overlap_examples():
    assert hermite_overlap(0, 0) == pytest.approx(SQRT_PI, rel=1e-15)
    assert hermite_overlap(2, 3) == 0.0
    assert hermite_overlap(3, 3) == pytest.approx(48 * SQRT_PI, rel=1e-15)


def test_overlap_matches_quadrature_example():
    value = gauss_hermite_rule(16).integrate(lambda x: hermite(3, x) ** 2)
    assert value == pytest.approx(hermite_overlap(3, 3), rel=1e-10)


@pytest.mark.parametrize("m", range(11))
@pytest.mark.parametrize("n", range(11))
def test_orthogonality(n, m):
    rule = gauss_hermite_rule(max(2, n + m + 1))
    value = rule.integrate(lambda x: hermite(n, x) * hermite(m, x))
    norm_n = 2.0**n * math.factorial(n)
    norm_m = 2.0**m * math.factorial(m)
    tol = 1e-8 * norm_n * SQRT_PI if n == m else 1e-8 * math.sqrt(norm_n * norm_m) * SQRT_PI
    assert abs(value - hermite_overlap(n, m)) < tol


def test_overlap_guard():
    with pytest.raises(OrderOutOfRangeError):
        hermite_overlap(171, 0)


# --- gaussian_integral -----------------------------------------------------


def test_gaussian_integral_examples():
    assert gaussian_integral(1, 0, 0) == pytest.approx(SQRT_PI, rel=1e-15)
    assert gaussian_integral(2, 1, 0.5) == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-3 / 8), rel=1e-15)


def test_gaussian_integral_simpson_example():
    dense = simpson(lambda x: np.exp(-(x**2 + 3 * x + 1)), -40, 40, 400_000)
    assert gaussian_integral(1, 3, 1) == pytest.approx(dense, rel=1e-10)


@pytest.mark.parametrize("c", [-0.5, 0.0, 1.0])
@pytest.mark.parametrize("b", [-1.0, 0.0, 2.0])
@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_gaussian_integral_grid(a, b, c):
    dense = simpson(lambda x: np.exp(-(a * x * x + b * x + c)), -40, 40, 400_000)
    assert gaussian_integral(a, b, c) == pytest.approx(dense, rel=1e-10)


@pytest.mark.parametrize("a", [0.0, -1.0, -1e-12])
def test_gaussian_integral_divergence(a):
    with pytest.raises(DivergentIntegralError):
        gaussian_integral(a, 0.0, 0.0)


@settings(max_examples=50)
@given(st.floats(0.2, 5.0), st.floats(-3, 3), st.floats(-2, 2))
def test_gaussian_integral_matches_quadrature_rule(a, b, c):
    # x = t / sqrt(a) maps the weight onto exp(-t^2)
    rule = gauss_hermite_rule(64)
    value = rule.integrate(lambda t: np.exp(-(b * t / math.sqrt(a) + c))) / math.sqrt(a)
    assert gaussian_integral(a, b, c) == pytest.approx(value, rel=1e-9)
