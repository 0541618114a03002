"""Numerical radius and Crawford number by sweeping the rotation angle.

For a unit vector ``x`` and angle ``theta``,
``Re(exp(i theta) <Ax, x>) = <Re(exp(i theta) A) x, x>``, so the support function
of the numerical range ``W(A)`` in direction ``-theta`` is the largest eigenvalue
of the Hermitian matrix ``H(theta) = cos(theta) B - sin(theta) C`` where
``A = B + iC``.  Hence::

    w(A) = max_theta lambda_max(H(theta))

Since ``W(A)`` is compact and convex, the distance from the origin to it is the
largest margin of a half-plane that separates the origin from ``W(A)``::

    c(A) = max(0, max_theta lambda_min(H(theta)))

Both maxima are located on a uniform angle grid and then polished with
golden-section search inside the three-point bracket around every grid local
maximum.  ``H(theta + pi) = -H(theta)``, so only half of the grid needs
eigenvalues.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import cartesian_decomposition, is_hermitian, operator_norm

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class AngleSweepConfig:
    grid_points: int = 256
    refine_tol: float = 1e-10
    refine_max_iter: int = 200

    def __post_init__(self):
        if self.grid_points < 8:
            raise ValueError("grid_points must be >= 8")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")
        if self.refine_max_iter < 1:
            raise ValueError("refine_max_iter must be >= 1")


DEFAULT_SWEEP = AngleSweepConfig()


@dataclass(frozen=True)
class QuantityReport:
    operator_norm: float
    numerical_radius: float
    crawford_number: float
    method_notes: str


def _rotated(b: np.ndarray, c: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    cos = np.cos(thetas)[:, None, None]
    sin = np.sin(thetas)[:, None, None]
    # real combinations of Hermitian matrices stay Hermitian
    return cos * b - sin * c


def _grid(b, c, points):
    """Grid angles with ``lambda_max`` and ``lambda_min`` of ``H(theta)`` on each."""
    half = (points + 1) // 2
    thetas = 2.0 * np.pi * np.arange(2 * half) / (2 * half)
    ev = np.linalg.eigvalsh(_rotated(b, c, thetas[:half]))
    lmax = np.concatenate([ev[:, -1], -ev[:, 0]])
    lmin = np.concatenate([ev[:, 0], -ev[:, -1]])
    return thetas, lmax, lmin


def _bracket_centres(values: np.ndarray) -> np.ndarray:
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    peaks = np.flatnonzero((values >= left) & (values > right))
    best = int(np.argmax(values))  # ties resolve to the smaller angle
    return np.union1d(peaks, [best])


def _golden_max(fun, lo: float, hi: float, tol: float, max_iter: int):
    """Golden-section maximisation of a scalar function on ``[lo, hi]``."""
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = fun(x1), fun(x2)
    it = 0
    while it < max_iter and b - a > tol:
        it += 1
        if f1 < f2:  # maximum lies in [x1, b]
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = fun(x1)
    return (x1, f1, it) if f1 >= f2 else (x2, f2, it)


def _sweep(b, c, cfg: AngleSweepConfig, which: str):
    thetas, lmax, lmin = _grid(b, c, cfg.grid_points)
    values = lmax if which == "max" else lmin
    eigvalsh = np.linalg.eigvalsh
    if which == "max":
        def fun(t):
            return eigvalsh(math.cos(t) * b - math.sin(t) * c)[-1]
    else:
        def fun(t):
            return eigvalsh(math.cos(t) * b - math.sin(t) * c)[0]
    step = float(thetas[1] - thetas[0])
    centres = _bracket_centres(values)
    best = float(np.max(values))
    iters = 0
    for k in centres:
        centre = float(thetas[k])
        _, refined, it = _golden_max(fun, centre - step, centre + step,
                                     cfg.refine_tol, cfg.refine_max_iter)
        best = max(best, float(refined))
        iters = max(iters, it)
    return best, len(centres), iters


def numerical_radius(a: np.ndarray, cfg: AngleSweepConfig = DEFAULT_SWEEP) -> float:
    """``w(A)``: maximum over the angle of ``lambda_max(Re(exp(i theta) A))``."""
    b, c = cartesian_decomposition(a)
    if not np.any(b) and not np.any(c):
        return 0.0
    value, _, _ = _sweep(b, c, cfg, "max")
    return value


def _hermitian_crawford(h: np.ndarray) -> float:
    w = np.linalg.eigvalsh((h + h.conj().T) / 2)
    lo, hi = float(w[0]), float(w[-1])
    if lo <= 0.0 <= hi:
        return 0.0
    return min(abs(lo), abs(hi))


def crawford_number(a: np.ndarray, cfg: AngleSweepConfig = DEFAULT_SWEEP,
                    fast_path: bool = True) -> float:
    """``c(A)``, the distance from the origin to ``W(A)``.

    Hermitian inputs have ``W(A) = [lambda_min, lambda_max]`` and skip the sweep;
    skew-Hermitian inputs do the same after dividing by ``i``.
    """
    a = np.asarray(a, dtype=np.complex128)
    if fast_path:
        if is_hermitian(a):
            return _hermitian_crawford(a)
        if is_hermitian(a / 1j):
            return _hermitian_crawford(a / 1j)
    b, c = cartesian_decomposition(a)
    if not np.any(b) and not np.any(c):
        return 0.0
    value, _, _ = _sweep(b, c, cfg, "min")
    return max(0.0, value)


def quantities(a: np.ndarray, cfg: AngleSweepConfig = DEFAULT_SWEEP) -> QuantityReport:
    a = np.asarray(a, dtype=np.complex128)
    b, c = cartesian_decomposition(a)
    if not np.any(a):
        return QuantityReport(0.0, 0.0, 0.0, "zero matrix")
    w, nb, it = _sweep(b, c, cfg, "max")
    cr = crawford_number(a, cfg)
    notes = (f"grid_points={cfg.grid_points} refine_tol={cfg.refine_tol:g} "
             f"brackets={nb} golden_iterations={it}")
    return QuantityReport(operator_norm(a), w, cr, notes)


def _unit_vectors(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    x = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def _sampled_moduli(a, samples, seed, chunk=65536):
    a = np.asarray(a, dtype=np.complex128)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    n = a.shape[0]
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        x = _unit_vectors(rng, m, n)
        yield np.abs(np.einsum("ki,ij,kj->k", x.conj(), a, x))
        done += m


def numerical_radius_sample_oracle(a: np.ndarray, samples: int = 100_000,
                                   seed: int = 0) -> float:
    """Max of ``|<Ax, x>|`` over random unit vectors; a lower bound for ``w(A)``."""
    return float(max(chunk.max() for chunk in _sampled_moduli(a, samples, seed)))


def crawford_sample_oracle(a: np.ndarray, samples: int = 100_000, seed: int = 0) -> float:
    """Min of ``|<Ax, x>|`` over random unit vectors; an upper bound for ``c(A)``."""
    return float(min(chunk.min() for chunk in _sampled_moduli(a, samples, seed)))
