"""Spectral calculus for Hermitian matrices and operator Hermite-Hadamard means."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from numpy.polynomial import legendre
from numpy.polynomial import polynomial as P

from .errors import DomainViolation
from .linalg import _check_hermitian, _eigh, hermitian_eigen, symmetrize

ALL_REALS = "all-reals"
NONNEGATIVE = "nonnegative"
POSITIVE = "positive"

CLAMP_TOL = 1e-10
POSITIVE_FLOOR = 1e-12


@dataclass(frozen=True)
class ScalarFunction:
    """A real function of a real variable with declared domain and shape flags.

    ``kind`` is ``"power"`` (``t**r``) or ``"polynomial"`` (ascending ``coeffs``).
    The flags are declarations; :func:`check_operator_convexity` can try to
    falsify ``operator_convex`` but nothing here infers it.
    """

    kind: str
    r: float = 1.0
    coeffs: tuple = ()
    domain: str = ALL_REALS
    nonnegative: bool = False
    increasing: bool = False
    operator_convex: bool = False
    name: str = field(default="", compare=False)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "power":
            if self.r == 1.0:
                return x.copy()
            if self.r == 2.0:
                return x * x
            return np.power(x, self.r)
        return P.polyval(x, np.asarray(self.coeffs, dtype=float))

    def __str__(self):
        return self.name or repr(self)


def power(r: float) -> ScalarFunction:
    """``t**r`` with the domain and flags the theory attaches to ``r``."""
    r = float(r)
    label = "t" if r == 1.0 else f"t^{r:g}"
    if 1.0 <= r <= 2.0:
        return ScalarFunction("power", r=r, domain=NONNEGATIVE, nonnegative=True,
                              increasing=True, operator_convex=True, name=label)
    if -1.0 <= r < 0.0:
        return ScalarFunction("power", r=r, domain=POSITIVE, nonnegative=True,
                              increasing=False, operator_convex=True, name=label)
    if r > 0.0:
        return ScalarFunction("power", r=r, domain=NONNEGATIVE, nonnegative=True,
                              increasing=True, operator_convex=False, name=label)
    if r == 0.0:
        return ScalarFunction("power", r=r, domain=NONNEGATIVE, nonnegative=True,
                              increasing=False, operator_convex=True, name=label)
    return ScalarFunction("power", r=r, domain=POSITIVE, nonnegative=True,
                          increasing=False, operator_convex=False, name=label)


def polynomial(coeffs, domain: str = ALL_REALS, nonnegative: bool = False,
               increasing: bool = False, operator_convex: bool = False,
               name: str = "") -> ScalarFunction:
    return ScalarFunction("polynomial", coeffs=tuple(float(c) for c in coeffs),
                          domain=domain, nonnegative=nonnegative, increasing=increasing,
                          operator_convex=operator_convex, name=name or f"poly{tuple(coeffs)}")


def parse_function(text: str) -> ScalarFunction:
    """Parse ``"t"``, ``"t^1.5"``, ``"t^2"`` (any ``t^r``) into a power function."""
    s = text.replace(" ", "").replace("**", "^")
    if s == "t":
        return power(1.0)
    if s.startswith("t^"):
        try:
            return power(float(s[2:]))
        except ValueError:
            pass
    raise ValueError(f"cannot parse function {text!r}; expected t or t^r")


@dataclass(frozen=True)
class QuadratureConfig:
    nodes: int = 32

    def __post_init__(self):
        if self.nodes < 2:
            raise ValueError("quadrature needs at least 2 nodes")


DEFAULT_QUADRATURE = QuadratureConfig()


@lru_cache(maxsize=None)
def gauss_legendre_unit(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to ``[0, 1]``."""
    x, w = legendre.leggauss(nodes)
    t = (x + 1.0) / 2.0
    wt = w / 2.0
    t.flags.writeable = False
    wt.flags.writeable = False
    return t, wt


def _domain_eigenvalues(f: ScalarFunction, w: np.ndarray) -> np.ndarray:
    if f.domain == ALL_REALS or w.size == 0:
        return w
    lo, hi = float(w.min()), float(w.max())
    scale = max(1.0, -lo, hi)
    if f.domain == NONNEGATIVE:
        if lo >= 0.0:
            return w
        if lo < -CLAMP_TOL * scale:
            raise DomainViolation(f"{f}: eigenvalue {lo:.3e} is negative beyond roundoff")
        return np.maximum(w, 0.0)
    if lo < POSITIVE_FLOOR * scale:
        raise DomainViolation(f"{f}: eigenvalue {lo:.3e} is not positive")
    return w


def _apply(f: ScalarFunction, w: np.ndarray, v: np.ndarray) -> np.ndarray:
    fw = f(_domain_eigenvalues(f, w))
    return symmetrize((v * fw) @ v.conj().T)


def apply_scalar_function(f: ScalarFunction, h: np.ndarray,
                          method: str = "lapack") -> np.ndarray:
    """``f(H) = V diag(f(lambda)) V*``."""
    eig = hermitian_eigen(h, method=method)
    return _apply(f, eig.eigenvalues, eig.vectors)


def loewner_leq(x: np.ndarray, y: np.ndarray, tol: float = 1e-9) -> bool:
    """``X <= Y`` in the Loewner order, up to ``tol`` relative to the larger norm."""
    return loewner_gap(x, y) >= -tol


def loewner_gap(x: np.ndarray, y: np.ndarray) -> float:
    """``lambda_min(Y - X) / max(1, ||X||, ||Y||)``; non-negative iff ``X <= Y``."""
    xs = _check_hermitian(x)
    ys = _check_hermitian(y)
    wx = np.linalg.eigvalsh(xs)
    wy = np.linalg.eigvalsh(ys)
    scale = max(1.0, abs(wx[0]), abs(wx[-1]), abs(wy[0]), abs(wy[-1]))
    return float(np.linalg.eigvalsh(ys - xs)[0]) / scale


def _scalar_identity(m: np.ndarray, tol: float = 1e-14) -> float | None:
    c = m[0, 0].real
    if np.max(np.abs(m - c * np.eye(m.shape[0]))) <= tol * max(1.0, abs(c)):
        return float(c)
    return None


def hh_integral_mean(f: ScalarFunction, x: np.ndarray, y: np.ndarray,
                     q: QuadratureConfig = DEFAULT_QUADRATURE) -> np.ndarray:
    """Gauss-Legendre value of ``int_0^1 f((1-t) X + t Y) dt``.

    Convex combinations of Hermitian matrices keep their spectra inside the
    hull of the endpoint spectra, so checking both endpoints (and the
    midpoint) against ``f.domain`` covers the whole segment.  When one endpoint
    is a multiple of the identity the integrand is diagonal in the eigenbasis of
    the other and the integral is taken eigenvalue by eigenvalue.
    """
    xs = _check_hermitian(x)
    ys = _check_hermitian(y)
    t, wt = gauss_legendre_unit(q.nodes)

    cy = _scalar_identity(ys)
    cx = _scalar_identity(xs) if cy is None else None
    if cy is not None or cx is not None:
        base, c = (xs, cy) if cy is not None else (ys, cx)
        lam, v = _eigh(base)
        mean = commuting_mean_eigenvalues(f, lam, c, q)
        return symmetrize((v * mean) @ v.conj().T)

    for m in (xs, ys, (xs + ys) / 2):
        _domain_eigenvalues(f, np.linalg.eigvalsh(m))
    acc = np.zeros_like(xs)
    for tk, wk in zip(t, wt):
        lam, v = _eigh((1.0 - tk) * xs + tk * ys)
        acc += wk * _apply(f, lam, v)
    return symmetrize(acc)


def commuting_mean_eigenvalues(f: ScalarFunction, lam: np.ndarray, c: float,
                               q: QuadratureConfig = DEFAULT_QUADRATURE) -> np.ndarray:
    """Eigenvalues of ``int_0^1 f((1-t) H + t c I) dt`` given the spectrum ``lam`` of ``H``.

    The integral is symmetric under ``t -> 1 - t``, so it does not matter which
    endpoint carries the identity.
    """
    lam = _domain_eigenvalues(f, np.asarray(lam, dtype=float))
    _domain_eigenvalues(f, np.array([c], dtype=float))
    t, wt = gauss_legendre_unit(q.nodes)
    path = np.multiply.outer(1.0 - t, lam) + (t * c)[:, None]
    return wt @ f(path)


def squared_integral_mean_closed_form(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``int_0^1 ((1-t) X + t Y)^2 dt = (X^2 + Y^2)/3 + (XY + YX)/6``."""
    xs = _check_hermitian(x)
    ys = _check_hermitian(y)
    xy = xs @ ys
    return symmetrize((xs @ xs + ys @ ys) / 3.0 + (xy + xy.conj().T) / 6.0)


class ConvexityReport(NamedTuple):
    violations: int
    worst_slack: float
    worst_case: tuple | None  # (X, Y, t) attaining worst_slack


def _domain_pair(rng: np.random.Generator, n: int, domain: str):
    def draw():
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        if domain == ALL_REALS:
            return (g + g.conj().T) / 2
        m = g.conj().T @ g
        if domain == POSITIVE:
            m = m + 1e-2 * np.eye(n)
        return m
    return draw(), draw()


def check_operator_convexity(f: ScalarFunction, n: int = 2, trials: int = 1000,
                             seed: int = 0, tol: float = 1e-9) -> ConvexityReport:
    """Random search for pairs violating ``f((1-t)X + tY) <= (1-t)f(X) + t f(Y)``.

    Slack is ``lambda_min`` of the right side minus the left side, divided by
    ``max(1, ||left||, ||right||)``.  A clean run does not certify convexity.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    ts = np.round(np.arange(1, 10) / 10.0, 10)
    violations = 0
    worst = np.inf
    worst_case = None
    for _ in range(trials):
        x, y = _domain_pair(rng, n, f.domain)
        fx = _apply(f, *_eigh(x))
        fy = _apply(f, *_eigh(y))
        for t in ts:
            lhs = _apply(f, *_eigh((1 - t) * x + t * y))
            rhs = (1 - t) * fx + t * fy
            wl = np.linalg.eigvalsh(lhs)
            wr = np.linalg.eigvalsh(rhs)
            scale = max(1.0, abs(wl[0]), abs(wl[-1]), abs(wr[0]), abs(wr[-1]))
            slack = float(np.linalg.eigvalsh(symmetrize(rhs - lhs))[0]) / scale
            if slack < -tol:
                violations += 1
            if slack < worst:
                worst = slack
                worst_case = (x, y, float(t))
    return ConvexityReport(violations, float(worst), worst_case)
