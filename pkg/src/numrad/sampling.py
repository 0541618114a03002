"""Seeded random-matrix ensembles.

Every sample is a pure function of ``(ensemble, n, seed, index)``: the stream
for a sample is ``SeedSequence(seed, spawn_key=(index, slot))`` so batches can
be generated in any order.  ``slot`` separates the first and second member of
a pair and the vectors used for vector-triple checks.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange

ENSEMBLES = (
    "ginibre",
    "hermitian",
    "psd",
    "positive_definite",
    "normal",
    "unitary",
    "nilpotent",
    "skew_hermitian",
    "diagonal_real",
)

PSD_ENSEMBLES = frozenset({"psd", "positive_definite"})
HERMITIAN_ENSEMBLES = frozenset({"hermitian", "psd", "positive_definite", "diagonal_real"})


@dataclass(frozen=True)
class GeneratorConfig:
    ensemble: str = "ginibre"
    n: int = 4
    seed: int = 1
    count: int = 200

    def __post_init__(self):
        if self.ensemble not in ENSEMBLES:
            raise ValueError(f"unknown ensemble {self.ensemble!r}; choose from {ENSEMBLES}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _rng(cfg: GeneratorConfig, index: int, slot: int) -> np.random.Generator:
    if not 0 <= index < cfg.count:
        raise IndexOutOfRange(f"index {index} outside [0, {cfg.count})")
    ss = np.random.SeedSequence(cfg.seed, spawn_key=(index, slot))
    return np.random.Generator(np.random.PCG64(ss))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian: real and imaginary parts each of variance 1/2."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diagonal(r)
    phases = d / np.where(np.abs(d) == 0, 1.0, np.abs(d))
    return q * phases.conj()[None, :]


def _draw(ensemble: str, n: int, rng: np.random.Generator) -> np.ndarray:
    if ensemble == "ginibre":
        return complex_gaussian(rng, (n, n))
    if ensemble == "hermitian":
        g = complex_gaussian(rng, (n, n))
        return (g + g.conj().T) / 2
    if ensemble == "skew_hermitian":
        g = complex_gaussian(rng, (n, n))
        return (g - g.conj().T) / 2
    if ensemble in PSD_ENSEMBLES:
        g = complex_gaussian(rng, (n, n))
        m = g.conj().T @ g
        m = (m + m.conj().T) / 2
        if ensemble == "positive_definite":
            m = m + 1e-3 * np.linalg.norm(m, 2) * np.eye(n)
        return m
    if ensemble == "unitary":
        return haar_unitary(rng, n)
    if ensemble == "normal":
        u = haar_unitary(rng, n)
        z = complex_gaussian(rng, n)
        return (u * z[None, :]) @ u.conj().T
    if ensemble == "nilpotent":
        return np.triu(complex_gaussian(rng, (n, n)), k=1)
    if ensemble == "diagonal_real":
        return np.diag(rng.standard_normal(n)).astype(np.complex128)
    raise ValueError(f"unknown ensemble {ensemble!r}")


def _frozen(m):
    m = np.ascontiguousarray(m, dtype=np.complex128)
    m.flags.writeable = False
    return m


def generate(cfg: GeneratorConfig, index: int) -> np.ndarray:
    return _frozen(_draw(cfg.ensemble, cfg.n, _rng(cfg, index, 0)))


def generate_pair(cfg: GeneratorConfig, index: int) -> tuple[np.ndarray, np.ndarray]:
    """``(generate(cfg, index), D)`` with ``D`` an independent draw from the same ensemble."""
    return generate(cfg, index), _frozen(_draw(cfg.ensemble, cfg.n, _rng(cfg, index, 1)))


def generate_vectors(cfg: GeneratorConfig, index: int):
    """Complex Gaussian ``x``, ``y`` and a unit vector ``e`` of length ``n``."""
    rng = _rng(cfg, index, 2)
    x, e, y = complex_gaussian(rng, (3, cfg.n))
    return x, e / np.linalg.norm(e), y
