"""Registry of norm and numerical-radius inequality chains.

A chain is an ordered list of scalar terms that must be nondecreasing
(``inequality-chain``), a pair of terms that must agree (``equality``), or a
pair of Loewner-order gaps that must be nonnegative (``operator-order-triple``).
Consecutive terms ``u, v`` pass when ``v - u >= -tol * max(1, |u|, |v|)``.

Notation used in the anchors: ``w`` numerical radius, ``c`` Crawford number,
``|A| = (A*A)^{1/2}``, ``p = ||A + A*||``, ``q = ||A - A*||``.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple

import numpy as np

from .errors import (NotHermitian, NotUnitVector, PositivityViolation, SignatureMismatch,
                     UnknownChain)
from .linalg import HERMITIAN_TOL, _check_hermitian, _eigh, hermitian_residual, matrix_abs, symmetrize
from .radius import DEFAULT_SWEEP, AngleSweepConfig, crawford_number, numerical_radius
from .spectral import (DEFAULT_QUADRATURE, QuadratureConfig, ScalarFunction,
                       _domain_eigenvalues, commuting_mean_eigenvalues, hh_integral_mean,
                       power, squared_integral_mean_closed_form)

SINGLE = "single-matrix"
PAIR = "matrix-pair"
POSITIVE_PAIR = "positive-pair"
HERMITIAN_PAIR = "hermitian-pair"
VECTORS = "vector-triple"

CHAIN = "inequality-chain"
EQUALITY = "equality"
ORDER = "operator-order-triple"

DEFAULT_TOL = 1e-8
DEFAULT_ALPHA = 0.5
DEFAULT_F = power(2.0)

_ARITY = {SINGLE: 1, PAIR: 2, POSITIVE_PAIR: 2, HERMITIAN_PAIR: 2, VECTORS: 3}


@dataclass(frozen=True)
class InequalityChain:
    id: str
    anchor: str
    signature: str
    kind: str
    labels: tuple[str, ...]
    params: tuple[str, ...]
    compute: Callable = field(repr=False, compare=False)


@dataclass(frozen=True)
class ChainVerdict:
    chain_id: str
    term_values: tuple[tuple[str, float], ...]
    min_slack: float
    passed: bool
    tol: float
    inputs_digest: str
    params: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.term_values]


class ChainInfo(NamedTuple):
    id: str
    anchor: str
    signature: str
    kind: str
    params: tuple[str, ...]
    labels: tuple[str, ...]


def _hnorm(h: np.ndarray) -> float:
    # eigvalsh reads one triangle only; callers pass Hermitian matrices
    w = np.linalg.eigvalsh(h)
    return float(max(-w[0], w[-1]))


def _norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2))


class Operands:
    """Quantities derived from one input tuple, computed lazily and shared.

    Passing the same instance to several chain evaluations makes every chain
    see one value of ``w(A)`` (and of every other shared term) for that input.
    """

    def __init__(self, *inputs, sweep: AngleSweepConfig = DEFAULT_SWEEP,
                 quad: QuadratureConfig = DEFAULT_QUADRATURE):
        self.inputs = tuple(np.asarray(m, dtype=np.complex128) for m in inputs)
        self.sweep = sweep
        self.quad = quad
        self._memo: dict = {}

    def memo(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        for m in self.inputs:
            h.update(str(m.shape).encode())
            h.update(np.ascontiguousarray(m).tobytes())
        return h.hexdigest()[:16]

    @property
    def a(self):
        return self.inputs[0]

    @property
    def d(self):
        return self.inputs[1]

    # single-matrix quantities
    @cached_property
    def a_star(self):
        return self.a.conj().T

    @cached_property
    def gram(self):  # A*A = |A|^2
        return symmetrize(self.a_star @ self.a)

    @cached_property
    def cogram(self):  # AA* = |A*|^2
        return symmetrize(self.a @ self.a_star)

    @cached_property
    def norm_a(self):
        return _norm(self.a)

    @cached_property
    def kittaneh(self):  # ||A*A + AA*||
        return _hnorm(self.gram + self.cogram)

    @cached_property
    def re2(self):  # A + A*
        return symmetrize(self.a + self.a_star)

    @cached_property
    def im2(self):  # A - A*, skew-Hermitian
        return self.a - self.a_star

    @cached_property
    def p(self):
        return _hnorm(self.re2)

    @cached_property
    def q(self):
        return _hnorm(self.im2 / 1j)

    @cached_property
    def w(self):
        return self.w_of("A", self.a)

    @cached_property
    def w2(self):
        return self.w * self.w

    def w_of(self, key, m):
        return self.memo(("w", key), lambda: numerical_radius(m, self.sweep))

    @cached_property
    def c_re(self):  # c(A + A*)
        return crawford_number(self.re2, self.sweep)

    @cached_property
    def c_im(self):  # c(A - A*)
        return crawford_number(self.im2, self.sweep)

    @cached_property
    def abs_a(self):
        return matrix_abs(self.a)

    @cached_property
    def abs_a_star(self):
        return matrix_abs(self.a_star)

    @cached_property
    def half_abs_sum_sq(self):  # ((|A| + |A*|)/2)^2
        m = (self.abs_a + self.abs_a_star) / 2
        return symmetrize(m @ m)

    @cached_property
    def cartesian_product_norm(self):  # ||(A+A*)^2 (A-A*)^2||
        r = self.re2 @ self.re2
        s = self.im2 @ self.im2
        return _norm(r @ s)

    def family(self, name: str, alpha: float) -> np.ndarray:
        """The convex families ``S_alpha``, ``T_alpha``, ``U_alpha`` of positive matrices."""
        def build():
            if name == "S":
                x, y = self.gram, self.cogram
            elif name == "T":
                x, y = self.half_abs_sum_sq, self.gram
            elif name == "U":
                x, y = self.half_abs_sum_sq, self.cogram
            else:
                raise ValueError(name)
            return symmetrize(alpha * x + (1.0 - alpha) * y)
        return self.memo(("family", name, alpha), build)

    def family_eigh(self, name: str, alpha: float):
        return self.memo(("family_eigh", name, alpha), lambda: _eigh(self.family(name, alpha)))

    # pair quantities
    @cached_property
    def d_star(self):
        return self.d.conj().T

    @cached_property
    def norm_d(self):
        return _norm(self.d)

    @cached_property
    def norm_sum(self):
        return _norm(self.a + self.d)

    @cached_property
    def gram_sum(self):  # A*A + D*D
        return symmetrize(self.gram + self.d_star @ self.d)

    @cached_property
    def cogram_sum(self):  # AA* + DD*
        return symmetrize(self.cogram + self.d @ self.d_star)

    @cached_property
    def w_as_d(self):  # w(A*D)
        return self.w_of("A*D", self.a_star @ self.d)

    @cached_property
    def w_a_ds(self):  # w(AD*)
        return self.w_of("AD*", self.a @ self.d_star)

    @property
    def w_ds_a(self):  # w(D*A) = w((A*D)*) = w(A*D)
        return self.w_as_d


_REGISTRY: dict[str, InequalityChain] = {}


def _chain(cid, anchor, signature, labels, kind=CHAIN, params=()):
    def deco(fn):
        if cid in _REGISTRY:
            raise RuntimeError(f"duplicate chain id {cid}")
        _REGISTRY[cid] = InequalityChain(cid, anchor, signature, kind, tuple(labels),
                                         tuple(params), fn)
        return fn
    return deco


# ---------------------------------------------------------------------------
# classical bounds

@_chain("CH-EQV", r"\frac{\|A\|}{2}\leq w(A)\leq \|A\|", SINGLE,
        ["||A||/2", "w(A)", "||A||"])
def _eqv(o, f, alpha):
    return [o.norm_a / 2, o.w, o.norm_a]


@_chain("CH-KIT05", r"\frac{1}{4}\|A^*A+AA^*\| \leq w^2(A) \leq \frac{1}{2}\|A^*A+AA^*\|",
        SINGLE, ["||A*A+AA*||/4", "w^2(A)", "||A*A+AA*||/2"])
def _kit05(o, f, alpha):
    return [o.kittaneh / 4, o.w2, o.kittaneh / 2]


@_chain("CH-KIT03",
        r"w(A) \leq \frac{1}{2}\||A|+|A^*|\| \leq \frac{1}{2}\|A\|+\frac{1}{2}\|A^2\|^{1/2}",
        SINGLE, ["w(A)", "|| |A|+|A*| ||/2", "||A||/2 + ||A^2||^(1/2)/2"])
def _kit03(o, f, alpha):
    return [o.w, _hnorm(o.abs_a + o.abs_a_star) / 2,
            o.norm_a / 2 + np.sqrt(_norm(o.a @ o.a)) / 2]


@_chain("CH-BP-ALPHA",
        r"w^2(A) \leq \min_{0\leq \alpha \leq 1} \| \alpha A^*A +(1-\alpha)AA^* \|",
        SINGLE, ["w^2(A)", "min_alpha ||alpha A*A + (1-alpha) AA*||"])
def _bp_alpha(o, f, alpha):
    a_star, value = _minimize_alpha(o, "imp3")
    return [o.w2, value], {"alpha_star": a_star}


@_chain("CH-BP-GAMMA",
        r"w^2(A) \leq \min\{\gamma_1, \gamma_2\}, \gamma_{1,2} = \min_\alpha \| \alpha "
        r"(\frac{|A|+|A^*|}{2})^2 + (1-\alpha) |A^*|^2 \text{ resp. } |A|^2 \|",
        SINGLE, ["w^2(A)", "min(gamma_1, gamma_2)"])
def _bp_gamma(o, f, alpha):
    a1, g1 = _minimize_alpha(o, "gamma1")
    a2, g2 = _minimize_alpha(o, "gamma2")
    return [o.w2, min(g1, g2)], {"gamma_1": g1, "gamma_2": g2,
                                 "alpha_star_1": a1, "alpha_star_2": a2}


@_chain("CH-OM", r"\frac{1}{4} \|A+A^*\|\|A-A^*\| \leq w^2(A)", SINGLE,
        ["pq/4", "w^2(A)"])
def _om(o, f, alpha):
    return [o.p * o.q / 4, o.w2]


@_chain("CH-IDENT", r"\frac{1}{4}\|A^*A+AA^*\| = \frac{1}{2}\|B^2+C^2\|, A = B + iC",
        SINGLE, ["||A*A+AA*||/4", "||B^2+C^2||/2"], kind=EQUALITY)
def _ident(o, f, alpha):
    b = o.re2 / 2
    c = o.im2 / 2j
    return [o.kittaneh / 4, _hnorm(b @ b + c @ c) / 2]


# ---------------------------------------------------------------------------
# lower bounds for w^2 via the Cartesian decomposition

@_chain("CH-T2.1",
        r"\frac{1}{4}\|A^*A+AA^*\| \leq \frac{1}{8}(p^2+q^2) \leq \frac{1}{8}(p^2+q^2) "
        r"+\frac{1}{8}c^2(A+A^*)+\frac{1}{8}c^2(A-A^*) \leq w^2(A)",
        SINGLE, ["||A*A+AA*||/4", "(p^2+q^2)/8", "(p^2+q^2+c^2(A+A*)+c^2(A-A*))/8",
                 "w^2(A)"])
def _t21(o, f, alpha):
    base = (o.p ** 2 + o.q ** 2) / 8
    return [o.kittaneh / 4, base, base + (o.c_re ** 2 + o.c_im ** 2) / 8, o.w2]


@_chain("CH-C2.3",
        r"\frac{1}{4}\|A^*A+AA^*\|+\frac{1}{8}c^2(A+A^*)+\frac{1}{8}c^2(A-A^*)\leq w^2(A)",
        SINGLE, ["||A*A+AA*||/4 + (c^2(A+A*)+c^2(A-A*))/8", "w^2(A)"])
def _c23(o, f, alpha):
    return [o.kittaneh / 4 + (o.c_re ** 2 + o.c_im ** 2) / 8, o.w2]


@_chain("CH-T2.8",
        r"\frac{1}{4}\|A^*A+AA^*\| \leq \frac{1}{8}[\max\{p^2,q^2\}+pq] \leq w^2(A)",
        SINGLE, ["||A*A+AA*||/4", "(max(p^2,q^2)+pq)/8", "w^2(A)"])
def _t28(o, f, alpha):
    return [o.kittaneh / 4, (max(o.p ** 2, o.q ** 2) + o.p * o.q) / 8, o.w2]


@_chain("CH-T2.10",
        r"\frac{1}{4}\|A^*A+AA^*\| \leq \frac{1}{4\sqrt{2}}[p^4+q^4]^{1/2} \leq w^2(A)",
        SINGLE, ["||A*A+AA*||/4", "(p^4+q^4)^(1/2)/(4 sqrt 2)", "w^2(A)"])
def _t210(o, f, alpha):
    return [o.kittaneh / 4, np.sqrt(o.p ** 4 + o.q ** 4) / (4 * np.sqrt(2)), o.w2]


@_chain("CH-T2.12",
        r"\frac{1}{4}\|A^*A+AA^*\| \leq \frac{1}{8}[2(p^4+q^4)^2+8p^4q^4]^{1/4} \leq w^2(A)",
        SINGLE, ["||A*A+AA*||/4", "(2(p^4+q^4)^2+8p^4q^4)^(1/4)/8", "w^2(A)"])
def _t212(o, f, alpha):
    p4, q4 = o.p ** 4, o.q ** 4
    return [o.kittaneh / 4, (2 * (p4 + q4) ** 2 + 8 * p4 * q4) ** 0.25 / 8, o.w2]


@_chain("CH-T2.14",
        r"\frac{1}{4}\|A^*A+AA^*\| \leq \frac{1}{8}[(p^2+q^2)^2+\frac{1}{2}(p^2-q^2)^2]^{1/2}"
        r" \leq w^2(A)",
        SINGLE, ["||A*A+AA*||/4", "((p^2+q^2)^2+(p^2-q^2)^2/2)^(1/2)/8", "w^2(A)"])
def _t214(o, f, alpha):
    p2, q2 = o.p ** 2, o.q ** 2
    return [o.kittaneh / 4, np.sqrt((p2 + q2) ** 2 + (p2 - q2) ** 2 / 2) / 8, o.w2]


@_chain("CH-T2.16",
        r"\frac{1}{4}\|A^*A+AA^*\| \leq \frac{1}{2}w^2(A)+\frac{1}{8}\|(A+A^*)^2(A-A^*)^2\|^{1/2}"
        r" \leq w^2(A)",
        SINGLE, ["||A*A+AA*||/4", "w^2(A)/2 + ||(A+A*)^2(A-A*)^2||^(1/2)/8", "w^2(A)"])
def _t216(o, f, alpha):
    return [o.kittaneh / 4, o.w2 / 2 + np.sqrt(o.cartesian_product_norm) / 8, o.w2]


@_chain("CH-C2.17",
        r"\frac{1}{2}\|A^*A+AA^*\| - \frac{1}{4}\|(A+A^*)^2(A-A^*)^2\|^{1/2} \leq w^2(A)"
        r" \leq \frac{1}{2}\|A^*A+AA^*\|",
        SINGLE, ["||A*A+AA*||/2 - ||(A+A*)^2(A-A*)^2||^(1/2)/4", "w^2(A)", "||A*A+AA*||/2"])
def _c217(o, f, alpha):
    return [o.kittaneh / 2 - np.sqrt(o.cartesian_product_norm) / 4, o.w2, o.kittaneh / 2]


# ---------------------------------------------------------------------------
# norm inequalities for sums and products

@_chain("CH-T2.4",
        r"\|A+D\|^2 \leq \|A\|^2+\|D\|^2+\|A^*D+D^*A\| \leq (\|A\|+\|D\|)^2",
        PAIR, ["||A+D||^2", "||A||^2+||D||^2+||A*D+D*A||", "(||A||+||D||)^2"])
def _t24(o, f, alpha):
    cross = o.a_star @ o.d
    return [o.norm_sum ** 2, o.norm_a ** 2 + o.norm_d ** 2 + _hnorm(cross + cross.conj().T),
            (o.norm_a + o.norm_d) ** 2]


@_chain("CH-T2.6",
        r"\|A+D\|^2 \leq \|A\|^2+\|D\|^2+\|A\|\|D\|+\min\{w(A^*D), w(AD^*)\} "
        r"\leq (\|A\|+\|D\|)^2",
        PAIR, ["||A+D||^2", "||A||^2+||D||^2+||A|| ||D||+min(w(A*D), w(AD*))",
               "(||A||+||D||)^2"])
def _t26(o, f, alpha):
    m = min(o.w_as_d, o.w_a_ds)
    return ([o.norm_sum ** 2, o.norm_a ** 2 + o.norm_d ** 2 + o.norm_a * o.norm_d + m,
             (o.norm_a + o.norm_d) ** 2], {"w(A*D)": o.w_as_d, "w(AD*)": o.w_a_ds})


@_chain("CH-T2.13a",
        r"\|A+D\|^2 \leq \|A\|^2+\|D\|^2+\frac{1}{2}\|A^*A+D^*D\|+w(A^*D)",
        PAIR, ["||A+D||^2", "||A||^2+||D||^2+||A*A+D*D||/2+w(A*D)"])
def _t213a(o, f, alpha):
    return [o.norm_sum ** 2,
            o.norm_a ** 2 + o.norm_d ** 2 + _hnorm(o.gram_sum) / 2 + o.w_as_d]


@_chain("CH-T2.13b",
        r"\|A+D\|^2 \leq \|A\|^2+\|D\|^2+\frac{1}{2}\|AA^*+DD^*\|+w(AD^*)",
        PAIR, ["||A+D||^2", "||A||^2+||D||^2+||AA*+DD*||/2+w(AD*)"])
def _t213b(o, f, alpha):
    return [o.norm_sum ** 2,
            o.norm_a ** 2 + o.norm_d ** 2 + _hnorm(o.cogram_sum) / 2 + o.w_a_ds]


@_chain("CH-L2.BBP1",
        r"\|A+D\|^2 \leq 2 \max\{\|A^*A+D^*D\|, \|AA^*+DD^*\|\}",
        PAIR, ["||A+D||^2", "2 max(||A*A+D*D||, ||AA*+DD*||)"])
def _bbp1(o, f, alpha):
    return [o.norm_sum ** 2, 2 * max(_hnorm(o.gram_sum), _hnorm(o.cogram_sum))]


@_chain("CH-L2.BBP2",
        r"\|A+D\|^4 \leq 2 \max\{\|A^*A+D^*D\|^2+4w^2(D^*A), \|AA^*+DD^*\|^2+4w^2(AD^*)\}",
        PAIR, ["||A+D||^4", "2 max(||A*A+D*D||^2+4w^2(D*A), ||AA*+DD*||^2+4w^2(AD*))"])
def _bbp2(o, f, alpha):
    left = _hnorm(o.gram_sum) ** 2 + 4 * o.w_ds_a ** 2
    right = _hnorm(o.cogram_sum) ** 2 + 4 * o.w_a_ds ** 2
    return [o.norm_sum ** 4, 2 * max(left, right)]


@_chain("CH-BK", r"\|AD^*\| \leq \frac{1}{2}\| A^*A+D^*D \|", PAIR,
        ["||AD*||", "||A*A+D*D||/2"])
def _bk(o, f, alpha):
    return [_norm(o.a @ o.d_star), _hnorm(o.gram_sum) / 2]


@_chain("CH-L2.DP", r"\|A+D\| \leq \max\{\|A\|,\|D\|\}+ \|AD\|^{1/2}, A, D \geq 0",
        POSITIVE_PAIR, ["||A+D||", "max(||A||, ||D||) + ||AD||^(1/2)"])
def _dp(o, f, alpha):
    return [o.norm_sum, max(o.norm_a, o.norm_d) + np.sqrt(_norm(o.a @ o.d))]


@_chain("CH-BK2", r"\|AD\| \leq \frac{1}{4} \|A+D\|^2, A, D \geq 0", POSITIVE_PAIR,
        ["||AD||", "||A+D||^2/4"])
def _bk2(o, f, alpha):
    return [_norm(o.a @ o.d), o.norm_sum ** 2 / 4]


# ---------------------------------------------------------------------------
# operator convex functions

def _mean_norm(f: ScalarFunction, lam: np.ndarray, c: float, quad: QuadratureConfig) -> float:
    return float(np.max(np.abs(commuting_mean_eigenvalues(f, lam, c, quad))))


def _f_norm(f: ScalarFunction, lam: np.ndarray) -> float:
    return float(np.max(np.abs(f(_domain_eigenvalues(f, lam)))))


def _shifted_triple(o, f, lam, c):
    """``[f(c), ||int f((1-t) M + t c I) dt||, ||f(M)||]`` from the spectrum of ``M``."""
    return [float(f(max(c, 0.0))), _mean_norm(f, lam, c, o.quad), _f_norm(f, lam)]


def _squared_triple(o, m, c, upper):
    """Root form for ``f(t) = t^2`` using the closed-form mean, cross-checked by quadrature."""
    closed = squared_integral_mean_closed_form(m, c * np.eye(m.shape[0]))
    middle = np.sqrt(_hnorm(closed))
    lam, _ = _eigh(m)
    quad = np.sqrt(_mean_norm(DEFAULT_F, lam, c, o.quad))
    return [c, middle, upper], {"quadrature_middle": quad,
                                "closed_vs_quadrature": abs(middle - quad)}


@_chain("CH-L3.1",
        r"f(w^2(A)) \leq \| f(\alpha |A|^2+(1-\alpha)|A^*|^2)\|", SINGLE,
        ["f(w^2(A))", "||f(S_alpha)||"], params=("f", "alpha"))
def _l31(o, f, alpha):
    lam, _ = o.family_eigh("S", alpha)
    return [float(f(o.w2)), _f_norm(f, lam)]


def _family_chain(name):
    def compute(o, f, alpha):
        lam, _ = o.family_eigh(name, alpha)
        return _shifted_triple(o, f, lam, o.w2)
    return compute


def _family_root_chain(name):
    def compute(o, f, alpha):
        m = o.family(name, alpha)
        lam, _ = o.family_eigh(name, alpha)
        return _squared_triple(o, m, o.w2, float(np.max(np.abs(lam))))
    return compute


_FAMILY_ANCHORS = {
    "S": r"S_\alpha = \alpha |A|^2+(1-\alpha) |A^*|^2",
    "T": r"T_\alpha = \alpha (\frac{|A|+|A^*|}{2})^2+(1-\alpha) |A|^2",
    "U": r"U_\alpha = \alpha (\frac{|A|+|A^*|}{2})^2+(1-\alpha) |A^*|^2",
}

for _cid, _root_id, _name in (("CH-T3.5", "CH-C3.6", "S"), ("CH-T3.7", "CH-C3.8", "T"),
                              ("CH-T3.9", "CH-C3.10", "U")):
    _m = f"{_name}_alpha"
    _chain(_cid,
           rf"f(w^2(A)) \leq \| \int_0^1 f((1-t){_m}+tw^2(A)I)dt \| \leq \|f({_m})\|, "
           + _FAMILY_ANCHORS[_name],
           SINGLE, ["f(w^2(A))", f"||int f((1-t){_m} + t w^2 I) dt||", f"||f({_m})||"],
           params=("f", "alpha"))(_family_chain(_name))
    _chain(_root_id,
           rf"w^2(A) \leq \frac{{1}}{{\sqrt{{3}}}}\| {_m}^2 + w^4(A)I + w^2(A){_m} \|^{{1/2}}"
           rf" \leq \|{_m}\|, " + _FAMILY_ANCHORS[_name],
           SINGLE, ["w^2(A)", f"||({_m}^2 + w^4 I + w^2 {_m})/3||^(1/2)", f"||{_m}||"],
           params=("alpha",))(_family_root_chain(_name))


@_chain("CH-T3.11",
        r"f(\|AD\|) \leq \| \int_0^1 f((1-t)(\frac{A+D}{2})^2 +t\|AD\|I)dt \| \leq "
        r"\| f((\frac{A+D}{2})^2)\|, A, D \geq 0",
        POSITIVE_PAIR, ["f(||AD||)", "||int f((1-t)M + t||AD|| I) dt||", "||f(M)||"],
        params=("f",))
def _t311(o, f, alpha):
    lam, _ = _eigh(_half_sum_sq(o))
    return _shifted_triple(o, f, lam, _norm(o.a @ o.d))


def _half_sum_sq(o):
    def build():
        h = (o.a + o.d) / 2
        return symmetrize(h @ h)
    return o.memo("half_sum_sq", build)


@_chain("CH-C3.12",
        r"\|AD\| \leq \frac{1}{\sqrt{3}}\| (\frac{A+D}{2})^4 +\|AD\|^2I + \|AD\|"
        r"(\frac{A+D}{2})^2 \|^{1/2} \leq \frac{1}{4}\| A+D \|^2, A, D \geq 0",
        POSITIVE_PAIR, ["||AD||", "||(M^2 + ||AD||^2 I + ||AD|| M)/3||^(1/2)", "||A+D||^2/4"])
def _c312(o, f, alpha):
    return _squared_triple(o, _half_sum_sq(o), _norm(o.a @ o.d), o.norm_sum ** 2 / 4)


def _gram_mid(o):
    return o.memo("gram_mid", lambda: o.gram_sum / 2)


@_chain("CH-T3.13",
        r"f(\|AD^*\|) \leq \| \int_0^1 f((1-t)(\frac{|A|^2+|D|^2}{2}) +t\|AD^*\|I)dt \|"
        r" \leq \| f(\frac{|A|^2+|D|^2}{2})\|",
        PAIR, ["f(||AD*||)", "||int f((1-t)M + t||AD*|| I) dt||", "||f(M)||"],
        params=("f",))
def _t313(o, f, alpha):
    lam, _ = _eigh(_gram_mid(o))
    return _shifted_triple(o, f, lam, _norm(o.a @ o.d_star))


@_chain("CH-C3.14",
        r"\|AD^*\| \leq \frac{1}{\sqrt{3}}\| (\frac{|A|^2+|D|^2}{2})^2 +\|AD^*\|^2I + \|AD^*\|"
        r"(\frac{|A|^2+|D|^2}{2}) \|^{1/2} \leq \frac{1}{2}\| A^*A+D^*D \|",
        PAIR, ["||AD*||", "||(M^2 + ||AD*||^2 I + ||AD*|| M)/3||^(1/2)", "||A*A+D*D||/2"])
def _c314(o, f, alpha):
    return _squared_triple(o, _gram_mid(o), _norm(o.a @ o.d_star), _hnorm(o.gram_sum) / 2)


def _hh_parts(o, f):
    def build():
        x, y = o.a, o.d
        mean = hh_integral_mean(f, x, y, o.quad)
        lam, v = _eigh((x + y) / 2)
        f_mid = symmetrize((v * f(_domain_eigenvalues(f, lam))) @ v.conj().T)
        fx = _apply_eigh(f, x)
        fy = _apply_eigh(f, y)
        return f_mid, mean, (fx + fy) / 2
    return o.memo(("hh", f), build)


def _apply_eigh(f, h):
    lam, v = _eigh(h)
    return symmetrize((v * f(_domain_eigenvalues(f, lam))) @ v.conj().T)


@_chain("CH-HH",
        r"f(\frac{A+D}{2}) \leq \int_0^1 f((1-t)A+tD)dt \leq \frac{1}{2}(f(A)+f(D))",
        HERMITIAN_PAIR, ["lambda_min(mean - f(mid))/scale", "lambda_min(avg - mean)/scale"],
        kind=ORDER, params=("f",))
def _hh(o, f, alpha):
    f_mid, mean, avg = _hh_parts(o, f)
    ev = [np.linalg.eigvalsh(m) for m in (f_mid, mean, avg)]
    scale = max(1.0, *(max(abs(e[0]), abs(e[-1])) for e in ev))
    g1 = float(np.linalg.eigvalsh(symmetrize(mean - f_mid))[0]) / scale
    g2 = float(np.linalg.eigvalsh(symmetrize(avg - mean))[0]) / scale
    return [g1, g2]


@_chain("CH-HH-NORM",
        r"\| f(\frac{A+D}{2})\| \leq \|\int_0^1 f((1-t)A+tD)dt \|\leq \frac{1}{2}\|f(A)+f(D)\|,"
        r" f \geq 0",
        HERMITIAN_PAIR, ["||f((A+D)/2)||", "||int f((1-t)A + tD) dt||", "||f(A)+f(D)||/2"],
        params=("f",))
def _hh_norm(o, f, alpha):
    if not f.nonnegative:
        raise SignatureMismatch(f"CH-HH-NORM needs a nonnegative f, got {f}")
    f_mid, mean, avg = _hh_parts(o, f)
    return [_hnorm(f_mid), _hnorm(mean), _hnorm(avg)]


@_chain("CH-BUZANO",
        r"|\langle x,e\rangle \langle e,y\rangle| \leq \frac{1}{2}(\|x\| \|y\|+|\langle x,y\rangle|),"
        r" \|e\| = 1",
        VECTORS, ["|<x,e><e,y>|", "(||x|| ||y|| + |<x,y>|)/2"])
def _buzano(o, f, alpha):
    x, e, y = o.inputs
    lhs = abs(np.vdot(e, x) * np.vdot(y, e))
    rhs = (np.linalg.norm(x) * np.linalg.norm(y) + abs(np.vdot(y, x))) / 2
    return [float(lhs), float(rhs)]


# ---------------------------------------------------------------------------
# alpha minimisation

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
ALPHA_MODES = ("imp3", "gamma1", "gamma2", "cor1", "cor2", "cor2b")


def _alpha_objective(o: Operands, mode: str) -> Callable[[float], float]:
    if mode in ("imp3", "gamma1", "gamma2"):
        x, y = {"imp3": (o.gram, o.cogram),
                "gamma1": (o.half_abs_sum_sq, o.cogram),
                "gamma2": (o.half_abs_sum_sq, o.gram)}[mode]
        diff = x - y
        return lambda al: _hnorm(y + al * diff)
    family = {"cor1": "S", "cor2b": "T", "cor2": "U"}.get(mode)
    if family is None:
        raise ValueError(f"unknown mode {mode!r}; choose from {ALPHA_MODES}")

    def middle(al):
        m = o.family(family, al)
        lam = np.linalg.eigvalsh(m)
        c = o.w2
        return float(np.sqrt(np.max(np.abs(lam * lam + c * lam + c * c)) / 3.0))
    return middle


def _golden_min(fun, lo, hi, tol):
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = fun(x1), fun(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = fun(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = fun(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _minimize_alpha(o: Operands, mode: str, search_tol: float = 1e-10):
    def run():
        fun = _alpha_objective(o, mode)
        candidates = [_golden_min(fun, 0.0, 1.0, search_tol), (0.0, fun(0.0)), (1.0, fun(1.0))]
        return min(candidates, key=lambda c: (c[1], c[0]))
    return o.memo(("alpha_min", mode, search_tol), run)


def alpha_minimized_norm(a: np.ndarray, mode: str = "imp3",
                         search_tol: float = 1e-10) -> tuple[float, float]:
    """Minimise an ``alpha``-family bound over ``alpha in [0, 1]``.

    ``imp3``, ``gamma1`` and ``gamma2`` minimise ``||alpha X + (1 - alpha) Y||``,
    which is convex in ``alpha``.  ``cor1``, ``cor2b`` and ``cor2`` minimise the
    middle term of CH-C3.6, CH-C3.8 and CH-C3.10; that is the square root of the
    norm of an operator convex function of an affine family, so it is unimodal
    and golden-section search applies.  Returns ``(alpha_star, value)``.
    """
    if mode not in ALPHA_MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {ALPHA_MODES}")
    return _minimize_alpha(Operands(a), mode, search_tol)


# ---------------------------------------------------------------------------
# evaluation

def get_chain(chain_id: str) -> InequalityChain:
    try:
        return _REGISTRY[chain_id]
    except KeyError:
        raise UnknownChain(chain_id) from None


def list_chains() -> list[ChainInfo]:
    return [ChainInfo(c.id, c.anchor, c.signature, c.kind, c.params, c.labels)
            for c in sorted(_REGISTRY.values(), key=lambda c: c.id)]


def _normalized_gap(u: float, v: float) -> float:
    return (v - u) / max(1.0, abs(u), abs(v))


def _check_signature(chain: InequalityChain, inputs, tol: float):
    want = _ARITY[chain.signature]
    if len(inputs) != want:
        raise SignatureMismatch(f"{chain.id} takes {want} inputs, got {len(inputs)}")
    if chain.signature == VECTORS:
        vecs = tuple(np.asarray(v, dtype=np.complex128).ravel() for v in inputs)
        if len({v.size for v in vecs}) != 1:
            raise SignatureMismatch("vectors must share one length")
        if abs(np.linalg.norm(vecs[1]) - 1.0) > 1e-12:
            raise NotUnitVector(f"||e|| = {np.linalg.norm(vecs[1])!r}")
        return vecs
    mats = []
    for m in inputs:
        m = np.asarray(m, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise SignatureMismatch(f"{chain.id}: expected square matrices, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise SignatureMismatch(f"{chain.id}: non-finite entries")
        mats.append(m)
    if len({m.shape for m in mats}) != 1:
        raise SignatureMismatch(f"{chain.id}: input shapes differ")
    if chain.signature == POSITIVE_PAIR:
        for m in mats:
            if hermitian_residual(m) > HERMITIAN_TOL:
                raise PositivityViolation(f"{chain.id}: input is not Hermitian")
            w = np.linalg.eigvalsh(symmetrize(m))
            if w[0] < -max(tol, 1e-10) * max(1.0, abs(w[0]), abs(w[-1])):
                raise PositivityViolation(
                    f"{chain.id}: input has eigenvalue {w[0]:.3e} < 0")
    if chain.signature == HERMITIAN_PAIR:
        for m in mats:
            try:
                _check_hermitian(m)
            except NotHermitian as exc:
                raise SignatureMismatch(f"{chain.id}: {exc}") from None
    return tuple(mats)


def evaluate_chain(chain_id: str, *inputs, f: ScalarFunction | None = None,
                   alpha: float | None = None, tol: float = DEFAULT_TOL,
                   operands: Operands | None = None) -> ChainVerdict:
    """Evaluate one registered chain on ``inputs``.

    ``operands`` lets callers share cached quantities (``w(A)`` and friends)
    between several chains evaluated on the same inputs; when given, ``inputs``
    may be omitted.
    """
    chain = get_chain(chain_id)
    if operands is None:
        operands = Operands(*_check_signature(chain, inputs, tol))
    elif inputs:
        raise SignatureMismatch("pass either inputs or operands, not both")
    else:
        operands.memo(("signature", chain.signature, tol),
                      lambda: _check_signature(chain, operands.inputs, tol))

    params = {}
    if "f" in chain.params:
        f = DEFAULT_F if f is None else f
        params["f"] = str(f)
    if "alpha" in chain.params:
        alpha = DEFAULT_ALPHA if alpha is None else float(alpha)
        if not 0.0 <= alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        params["alpha"] = alpha

    out = chain.compute(operands, f, alpha)
    values, meta = (out if isinstance(out, tuple) else (out, {}))
    values = [float(v) for v in values]
    terms = tuple(zip(chain.labels, values))

    if chain.kind == EQUALITY:
        slack = -abs(_normalized_gap(values[0], values[1]))
    elif chain.kind == ORDER:
        slack = min(values)
    else:
        slack = min(_normalized_gap(u, v) for u, v in zip(values, values[1:]))
    meta = {k: float(v) for k, v in meta.items()}
    return ChainVerdict(chain.id, terms, float(slack), bool(slack >= -tol), tol,
                        operands.digest, params, meta)


def check_buzano(x, e, y, tol: float = DEFAULT_TOL) -> ChainVerdict:
    return evaluate_chain("CH-BUZANO", x, e, y, tol=tol)


# ---------------------------------------------------------------------------
# pinned equality cases

class CaseResult(NamedTuple):
    name: str
    passed: bool
    values: dict


class SuiteReport(NamedTuple):
    cases: list
    passed: bool


def equality_case_suite(tol: float = 1e-12) -> SuiteReport:
    """Regression cases where equality does or does not propagate through a chain."""
    def close(x, y):
        return abs(x - y) <= tol * max(1.0, abs(x), abs(y))

    cases = []
    a, d = np.eye(2, dtype=complex), -np.eye(2, dtype=complex)
    na, nd = _norm(a), _norm(d)
    cross = _hnorm(a.conj().T @ d + d.conj().T @ a)
    nsum = _norm(a + d)
    cases.append(CaseResult(
        "identity-and-negative:cross-term",
        close(cross, 2 * na * nd) and close(nsum, 0.0) and not close(nsum, na + nd),
        {"||A*D+D*A||": cross, "2||A|| ||D||": 2 * na * nd, "||A+D||": nsum,
         "||A||+||D||": na + nd}))

    w1 = numerical_radius(a.conj().T @ d)
    w2 = numerical_radius(a @ d.conj().T)
    cases.append(CaseResult(
        "identity-and-negative:numerical-radius",
        close(w1, na * nd) and close(w2, na * nd) and not close(nsum, na + nd),
        {"w(A*D)": w1, "w(AD*)": w2, "||A|| ||D||": na * nd, "||A+D||": nsum}))

    h = np.diag([1.0, -3.0]).astype(complex)
    o = Operands(h)
    cases.append(CaseResult(
        "hermitian:product-term-vanishes",
        close(o.cartesian_product_norm, 0.0) and close(o.w2, o.kittaneh / 2),
        {"||(A+A*)^2(A-A*)^2||": o.cartesian_product_norm, "w^2(A)": o.w2,
         "||A*A+AA*||/2": o.kittaneh / 2}))

    for label, m in (("identity", np.eye(2)), ("diag(1,2)", np.diag([1.0, 2.0]))):
        m = m.astype(complex)
        n1 = _norm(m)
        s, prod = _norm(m + m), _norm(m @ m)
        cases.append(CaseResult(
            f"positive-norm-equality:{label}",
            close(s, 2 * n1) and close(prod, n1 * n1),
            {"||A+D||": s, "||A||+||D||": 2 * n1, "||AD||": prod, "||A|| ||D||": n1 * n1}))

    return SuiteReport(cases, all(c.passed for c in cases))
