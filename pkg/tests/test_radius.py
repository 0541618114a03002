import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numrad.radius import (AngleSweepConfig, crawford_number, crawford_sample_oracle,
                           numerical_radius, numerical_radius_sample_oracle, quantities)

from conftest import ginibre, hermitian


def test_identity_and_zero():
    assert numerical_radius(np.eye(3)) == pytest.approx(1.0)
    assert crawford_number(np.eye(3)) == pytest.approx(1.0)
    assert numerical_radius(np.zeros((2, 2))) == 0.0
    assert crawford_number(np.zeros((2, 2))) == 0.0


def test_nilpotent_disc():
    # W([[0,2],[0,0]]) is the closed unit disc
    a = np.array([[0, 2], [0, 0]], dtype=complex)
    assert numerical_radius(a) == pytest.approx(1.0, abs=1e-12)
    assert crawford_number(a) == 0.0


def test_jordan_block_crawford():
    # W is the disc of radius 1/2 about 3
    a = np.array([[3, 1], [0, 3]], dtype=complex)
    assert crawford_number(a) == pytest.approx(2.5, abs=1e-9)
    assert numerical_radius(a) == pytest.approx(3.5, abs=1e-9)


def test_rotation_invariance(rng):
    a = ginibre(rng, 5)
    w = numerical_radius(a)
    for phi in (0.3, 1.7, -2.2):
        assert numerical_radius(np.exp(1j * phi) * a) == pytest.approx(w, rel=1e-11)


def test_hermitian_radius_is_norm(rng):
    h = hermitian(rng, 6)
    assert numerical_radius(h) == pytest.approx(np.linalg.norm(h, 2), rel=1e-11)


def test_fast_path_matches_sweep(rng):
    for a in (hermitian(rng, 4) + 3 * np.eye(4), 1j * (hermitian(rng, 4) - 4 * np.eye(4))):
        assert crawford_number(a) == pytest.approx(crawford_number(a, fast_path=False),
                                                   abs=1e-9)


def test_crawford_zero_when_origin_inside(rng):
    assert crawford_number(ginibre(rng, 6)) == 0.0


def test_oracles_bracket_sweep(rng):
    a = ginibre(rng, 3) + 2.0
    w = numerical_radius(a)
    c = crawford_number(a)
    assert numerical_radius_sample_oracle(a, 20000, seed=1) <= w + 1e-8
    assert crawford_sample_oracle(a, 20000, seed=1) >= c - 1e-8
    assert numerical_radius_sample_oracle(a, 20000, seed=1) >= w - 0.05


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        AngleSweepConfig(grid_points=4)
    with pytest.raises(ValueError):
        AngleSweepConfig(refine_tol=0.0)


def test_coarse_grid_still_converges(rng):
    a = ginibre(rng, 4)
    assert numerical_radius(a, AngleSweepConfig(grid_points=8)) == pytest.approx(
        numerical_radius(a), rel=1e-9)


def test_quantities_report(rng):
    q = quantities(np.eye(2))
    assert (q.operator_norm, q.numerical_radius, q.crawford_number) == pytest.approx((1, 1, 1))
    assert "grid_points=256" in q.method_notes


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_classical_bounds(n, seed):
    a = ginibre(np.random.default_rng(seed), n)
    norm = np.linalg.norm(a, 2)
    w = numerical_radius(a)
    rho = np.max(np.abs(np.linalg.eigvals(a)))
    tol = 1e-10 * max(1.0, norm)
    assert norm / 2 - tol <= w <= norm + tol
    assert rho <= w + tol
    assert 0.0 <= crawford_number(a) <= w + tol


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_power_inequality(n, seed):
    # w(A^2) <= w(A)^2
    a = ginibre(np.random.default_rng(seed), n)
    assert numerical_radius(a @ a) <= numerical_radius(a) ** 2 * (1 + 1e-10)
