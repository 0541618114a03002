"""Dense complex matrix helpers and a Hermitian eigensolver.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  :func:`as_matrix`
validates an input (square, finite) and returns a read-only copy, so values
handed around the package are never mutated in place.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10
RECON_TOL = 1e-10

JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 30


class HermitianEigen(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    vectors: np.ndarray  # orthonormal columns


def as_matrix(a) -> np.ndarray:
    """Validate ``a`` as a square finite complex matrix; return a read-only copy."""
    m = np.array(a, dtype=np.complex128, copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    m.flags.writeable = False
    return m


def _frozen(m: np.ndarray) -> np.ndarray:
    m.flags.writeable = False
    return m


def adjoint(a: np.ndarray) -> np.ndarray:
    return _frozen(np.ascontiguousarray(np.asarray(a).conj().T))


def fro(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "fro"))


def hermitian_residual(h: np.ndarray) -> float:
    """Relative Hermitian defect ``||H - H*||_F / max(1, ||H||_F)``."""
    return fro(h - h.conj().T) / max(1.0, fro(h))


def is_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_residual(h) <= tol


def symmetrize(h: np.ndarray) -> np.ndarray:
    return (h + h.conj().T) / 2


def _check_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    res = hermitian_residual(h)
    if res > tol:
        raise NotHermitian(f"relative Hermitian residual {res:.3e} exceeds {tol:.1e}")
    return symmetrize(h)


def _offdiag(a: np.ndarray) -> float:
    return fro(a - np.diag(a.diagonal()))


def jacobi_eigh(h: np.ndarray, offdiag_tol: float = JACOBI_OFFDIAG_TOL,
                max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi for a Hermitian matrix using complex plane rotations.

    Each rotation first removes the phase of ``h[p, q]`` with a diagonal unitary
    and then applies the real symmetric Jacobi rotation, so the combined
    transform ``G`` is unitary and ``(G* H G)[p, q] == 0``.  Sweeps stop once the
    off-diagonal Frobenius mass drops below ``offdiag_tol * ||H||_F``.
    """
    a = np.array(h, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = fro(a)
    threshold = offdiag_tol * scale
    if n == 1 or scale == 0.0:
        return a.diagonal().real.copy(), v

    for _ in range(max_sweeps):
        if _offdiag(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / abs(theta)
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    else:
        off = _offdiag(a)
        if off > threshold:
            raise NoConvergence(
                f"Jacobi: off-diagonal mass {off:.3e} above {threshold:.3e} "
                f"after {max_sweeps} sweeps")

    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigen(h: np.ndarray, tol: float = RECON_TOL, method: str = "jacobi",
                    hermitian_tol: float = HERMITIAN_TOL) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method="jacobi"`` runs :func:`jacobi_eigh`; ``method="lapack"`` defers to
    ``numpy.linalg.eigh``.  Either way the reconstruction and unitarity
    residuals are verified against ``tol`` and :class:`NoConvergence` is raised
    if they are not met.
    """
    hs = _check_hermitian(h, hermitian_tol)
    if method == "jacobi":
        w, v = jacobi_eigh(hs)
    elif method == "lapack":
        w, v = np.linalg.eigh(hs)
    else:
        raise ValueError(f"unknown method {method!r}")

    n = hs.shape[0]
    recon = fro((v * w) @ v.conj().T - hs)
    unit = fro(v.conj().T @ v - np.eye(n))
    if recon > tol * max(1.0, fro(hs)) or unit > tol:
        raise NoConvergence(
            f"eigendecomposition residuals too large: reconstruction {recon:.3e}, "
            f"unitarity {unit:.3e}")
    return HermitianEigen(_frozen(w), _frozen(v))


def _eigh(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # fast path for internal numerics; callers guarantee h is Hermitian
    return np.linalg.eigh(symmetrize(h))


def _eigvalsh(h: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(symmetrize(h))


def operator_norm(a: np.ndarray) -> float:
    """Largest singular value, ``sqrt(lambda_max(A* A))``."""
    a = np.asarray(a, dtype=np.complex128)
    return float(np.linalg.norm(a, 2))


def hermitian_norm(h: np.ndarray) -> float:
    """Operator norm of a Hermitian matrix, as the largest eigenvalue modulus."""
    w = _eigvalsh(h)
    return float(max(abs(w[0]), abs(w[-1])))


def matrix_abs(a: np.ndarray, tol: float = RECON_TOL) -> np.ndarray:
    """``|A| = (A* A)^{1/2}``.

    Eigenvalues of ``A* A`` in ``[-tol * scale, 0)`` are roundoff and are
    clamped to zero; anything more negative raises.
    """
    a = np.asarray(a, dtype=np.complex128)
    gram = a.conj().T @ a
    w, v = _eigh(gram)
    floor = -tol * max(1.0, abs(w[-1]))
    if w[0] < floor:
        raise NoConvergence(f"A*A has eigenvalue {w[0]:.3e} below {floor:.3e}")
    root = np.sqrt(np.clip(w, 0.0, None))
    return _frozen(symmetrize((v * root) @ v.conj().T))


def cartesian_decomposition(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(B, C)`` with ``A = B + iC``, both Hermitian."""
    a = np.asarray(a, dtype=np.complex128)
    ah = a.conj().T
    return _frozen((a + ah) / 2), _frozen((a - ah) / 2j)


def is_psd(h: np.ndarray, tol: float = 1e-10,
           hermitian_tol: float = HERMITIAN_TOL) -> bool:
    """True iff ``lambda_min(H) >= -tol * max(1, ||H||)``."""
    hs = _check_hermitian(h, hermitian_tol)
    w = np.linalg.eigvalsh(hs)
    scale = max(1.0, abs(w[0]), abs(w[-1]))
    return bool(w[0] >= -tol * scale)
