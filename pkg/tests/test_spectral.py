import numpy as np
import pytest

from numrad.errors import DomainViolation, NotHermitian
from numrad.spectral import (QuadratureConfig, apply_scalar_function, check_operator_convexity,
                             commuting_mean_eigenvalues, gauss_legendre_unit, hh_integral_mean,
                             loewner_gap, loewner_leq, parse_function, polynomial, power,
                             squared_integral_mean_closed_form)

from conftest import hermitian, psd

# found by exhaustive search over small integer PSD pairs: t^3 fails midpoint
# convexity by about 0.0549 here
T3_X = np.diag([0.0, 1.0])
T3_Y = np.array([[1.0, -1.0], [-1.0, 2.0]])

# t^2 on the whole real line; power(2) is restricted to [0, inf)
SQUARE = polynomial([0, 0, 1], operator_convex=True, name="t^2 (all reals)")


def test_power_flags():
    assert power(2).operator_convex and power(1.5).operator_convex
    assert not power(3).operator_convex
    assert power(-0.5).domain == "positive"
    assert str(parse_function("t^1.5")) == "t^1.5"
    assert parse_function("t") == power(1)
    with pytest.raises(ValueError):
        parse_function("sin(t)")


def test_polynomial_call():
    p = polynomial([1, 0, 2])
    np.testing.assert_allclose(p(np.array([0.0, 1.0, 2.0])), [1, 3, 9])


def test_apply_matches_matrix_power(rng):
    h = hermitian(rng, 5)
    np.testing.assert_allclose(apply_scalar_function(SQUARE, h), h @ h, atol=1e-12)
    x = psd(rng, 4)
    root = apply_scalar_function(power(0.5), x, method="jacobi")
    np.testing.assert_allclose(root @ root, x, atol=1e-10)


def test_domain_checks():
    with pytest.raises(DomainViolation):
        apply_scalar_function(power(1.5), np.diag([1.0, -0.5]))
    # roundoff-sized negatives are clamped
    out = apply_scalar_function(power(1.5), np.diag([1.0, -1e-14]))
    assert out[1, 1] == 0.0
    with pytest.raises(DomainViolation):
        apply_scalar_function(power(-1), np.diag([1.0, 0.0]))
    with pytest.raises(NotHermitian):
        apply_scalar_function(power(2), np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_loewner(rng):
    x = psd(rng, 3)
    assert loewner_leq(x, x + np.eye(3))
    assert not loewner_leq(x + np.eye(3), x)
    assert loewner_gap(x, x) == pytest.approx(0.0, abs=1e-14)


def test_gauss_legendre_integrates_polynomials():
    t, w = gauss_legendre_unit(5)
    assert w.sum() == pytest.approx(1.0)
    assert w @ t**9 == pytest.approx(1 / 10)


@pytest.mark.parametrize("nodes", [2, 8, 32])
def test_quadrature_matches_closed_form(rng, nodes):
    x, y = hermitian(rng, 4), hermitian(rng, 4)
    got = hh_integral_mean(SQUARE, x, y, QuadratureConfig(nodes))
    np.testing.assert_allclose(got, squared_integral_mean_closed_form(x, y), atol=1e-12)


def test_commuting_path_matches_general(rng):
    x = psd(rng, 3)
    f = power(1.5)
    fast = hh_integral_mean(f, x, 2.0 * np.eye(3))
    t, w = gauss_legendre_unit(32)
    slow = sum(wk * apply_scalar_function(f, (1 - tk) * x + tk * 2.0 * np.eye(3))
               for tk, wk in zip(t, w))
    np.testing.assert_allclose(fast, slow, atol=1e-12)
    lam = np.array([0.0, 1.0])
    np.testing.assert_allclose(commuting_mean_eigenvalues(power(2), lam, 1.0),
                               [1 / 3, 1.0], atol=1e-14)


def test_hh_integral_mean_domain(rng):
    with pytest.raises(DomainViolation):
        hh_integral_mean(power(1.5), -np.eye(2), np.array([[1.0, 0.5], [0.5, 1.0]]))


def test_hermite_hadamard_sandwich(rng):
    for f in (power(1.5), power(2)):
        for _ in range(10):
            x, y = psd(rng, 3), psd(rng, 3)
            mean = hh_integral_mean(f, x, y)
            mid = apply_scalar_function(f, (x + y) / 2)
            avg = (apply_scalar_function(f, x) + apply_scalar_function(f, y)) / 2
            assert loewner_gap(mid, mean) >= -1e-9
            assert loewner_gap(mean, avg) >= -1e-9


def test_pinned_t3_counterexample():
    f = power(3)
    mid = apply_scalar_function(f, (T3_X + T3_Y) / 2)
    avg = (apply_scalar_function(f, T3_X) + apply_scalar_function(f, T3_Y)) / 2
    assert loewner_gap(mid, avg) < -1e-3  # normalised by max(1, ||.||)


def test_convexity_search():
    assert check_operator_convexity(power(3), n=2, trials=1000, seed=0).violations >= 1
    report = check_operator_convexity(power(2), n=3, trials=100, seed=0)
    assert report.violations == 0 and report.worst_slack >= -1e-9
