import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numrad.errors import NoConvergence, NotHermitian
from numrad.linalg import (as_matrix, cartesian_decomposition, fro, hermitian_eigen,
                           hermitian_norm, is_hermitian, is_psd, jacobi_eigh, matrix_abs,
                           operator_norm)

from conftest import ginibre, hermitian, psd


def test_jacobi_matches_lapack(rng):
    for n in (1, 2, 3, 7, 16):
        h = hermitian(rng, n)
        w, v = jacobi_eigh(h)
        np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
        np.testing.assert_allclose((v * w) @ v.conj().T, h, atol=1e-12)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12)


def test_jacobi_diagonal_input_is_untouched():
    w, v = jacobi_eigh(np.diag([3.0, 1.0]).astype(complex))
    assert list(w) == [1.0, 3.0]
    np.testing.assert_array_equal(np.abs(v), [[0, 1], [1, 0]])


def test_jacobi_sweep_budget_exhausted_raises(rng):
    with pytest.raises(NoConvergence):
        jacobi_eigh(hermitian(rng, 12), max_sweeps=1)


@pytest.mark.parametrize("method", ["jacobi", "lapack"])
def test_hermitian_eigen_outputs_are_read_only(rng, method):
    eig = hermitian_eigen(hermitian(rng, 4), method=method)
    assert np.all(np.diff(eig.eigenvalues) >= 0)
    with pytest.raises(ValueError):
        eig.vectors[0, 0] = 1.0


def test_non_hermitian_rejected():
    with pytest.raises(NotHermitian):
        hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))


def test_unknown_method(rng):
    with pytest.raises(ValueError):
        hermitian_eigen(hermitian(rng, 2), method="qr")


def test_as_matrix_validates():
    with pytest.raises(ValueError):
        as_matrix(np.ones((2, 3)))
    with pytest.raises(ValueError):
        as_matrix([[np.nan, 0], [0, 1]])


def test_norms(rng):
    a = ginibre(rng, 5)
    assert operator_norm(a) == pytest.approx(np.linalg.svd(a, compute_uv=False)[0])
    h = hermitian(rng, 5)
    assert hermitian_norm(h) == pytest.approx(np.max(np.abs(np.linalg.eigvalsh(h))))
    assert fro(a) == pytest.approx(np.sqrt(np.sum(np.abs(a) ** 2)))


def test_matrix_abs_squares_to_gram(rng):
    a = ginibre(rng, 4)
    m = matrix_abs(a)
    np.testing.assert_allclose(m @ m, a.conj().T @ a, atol=1e-12)
    assert is_psd(m)


def test_cartesian_parts_are_hermitian(rng):
    a = ginibre(rng, 6)
    b, c = cartesian_decomposition(a)
    assert is_hermitian(b) and is_hermitian(c)
    np.testing.assert_allclose(b + 1j * c, a, atol=1e-14)


def test_is_psd_tolerance():
    assert is_psd(np.diag([1.0, -1e-12]))
    assert not is_psd(np.diag([1.0, -1e-6]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(0, 2**32 - 1))
def test_jacobi_reconstruction_property(n, seed):
    h = hermitian(np.random.default_rng(seed), n) * 10 ** np.random.default_rng(seed).uniform(-3, 3)
    eig = hermitian_eigen(h)
    scale = max(1.0, fro(h))
    v, w = eig.vectors, eig.eigenvalues
    assert fro((v * w) @ v.conj().T - h) <= 1e-10 * scale
    assert fro(v.conj().T @ v - np.eye(n)) <= 1e-10


def test_psd_spectrum_nonnegative(rng):
    assert hermitian_eigen(psd(rng, 6)).eigenvalues[0] > -1e-12
