"""Batch evaluation of chains over sampled ensembles, and the pinned worked examples."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import product

import numpy as np

from . import __version__
from .chains import (HERMITIAN_PAIR, PAIR, POSITIVE_PAIR, SINGLE, VECTORS, ChainVerdict,
                     Operands, equality_case_suite, evaluate_chain, get_chain, list_chains)
from .radius import numerical_radius
from .sampling import (ENSEMBLES, HERMITIAN_ENSEMBLES, PSD_ENSEMBLES, GeneratorConfig,
                       generate, generate_pair, generate_vectors)
from .spectral import NONNEGATIVE, POSITIVE, parse_function

ALPHA_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
FUNCTIONS = ("t", "t^1.5", "t^2")


def alpha_grid(seed: int, extra: int = 3) -> list[float]:
    """The fixed alphas plus ``extra`` uniform draws tied to ``seed``."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0xA1FA,)))
    return list(ALPHA_GRID) + [float(x) for x in rng.uniform(0.0, 1.0, extra)]


@dataclass
class ChainStats:
    """Running totals for one chain: pass counts and per-gap tightness."""

    total: int = 0
    passed: int = 0
    worst_slack: float = math.inf
    gap_sum: list = field(default_factory=list)
    gap_min: list = field(default_factory=list)

    def add(self, verdict: ChainVerdict):
        self.total += 1
        self.passed += verdict.passed
        self.worst_slack = min(self.worst_slack, verdict.min_slack)
        vals = verdict.values
        gaps = [(v - u) / max(1.0, abs(u), abs(v)) for u, v in zip(vals, vals[1:])]
        if not self.gap_sum:
            self.gap_sum = [0.0] * len(gaps)
            self.gap_min = [math.inf] * len(gaps)
        for i, g in enumerate(gaps):
            self.gap_sum[i] += g
            self.gap_min[i] = min(self.gap_min[i], g)

    def summary(self) -> dict:
        n = max(self.total, 1)
        return {"total": self.total, "passed": self.passed,
                "failed": self.total - self.passed, "worst_slack": self.worst_slack,
                "mean_gap": [s / n for s in self.gap_sum], "min_gap": list(self.gap_min)}


@dataclass
class RunReport:
    tool_version: str
    command: str
    config: dict
    verdicts: list = field(default_factory=list)  # list of row dicts
    summary: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)  # pinned checks for worked examples

    @property
    def failed(self) -> int:
        return self.summary.get("failed", 0)

    def to_dict(self) -> dict:
        return asdict(self)


def verdict_row(v: ChainVerdict, **context) -> dict:
    row = dict(context)
    row.update(chain_id=v.chain_id, params=dict(v.params),
               terms=[[label, value] for label, value in v.term_values],
               min_slack=v.min_slack, passed=v.passed, tol=v.tol,
               inputs_digest=v.inputs_digest, metadata=dict(v.metadata))
    return row


def applicable(chain_id: str, ensemble: str, f_name: str | None = None) -> bool:
    """Whether samples of ``ensemble`` satisfy the input requirements of a chain."""
    sig = get_chain(chain_id).signature
    if sig == POSITIVE_PAIR:
        return ensemble in PSD_ENSEMBLES
    if sig == HERMITIAN_PAIR:
        domain = parse_function(f_name).domain if f_name else NONNEGATIVE
        if domain in (NONNEGATIVE, POSITIVE):
            return ensemble in PSD_ENSEMBLES
        return ensemble in HERMITIAN_ENSEMBLES
    return True


def _param_sets(chain_id, alphas, fs):
    params = get_chain(chain_id).params
    a_opts = alphas if "alpha" in params else [None]
    f_opts = fs if "f" in params else [None]
    return list(product(f_opts, a_opts))


def _summarize(stats: dict, skipped: int) -> dict:
    total = sum(s.total for s in stats.values())
    passed = sum(s.passed for s in stats.values())
    worst = min((s.worst_slack for s in stats.values()), default=math.inf)
    return {"total": total, "passed": passed, "failed": total - passed,
            "worst_slack": worst if math.isfinite(worst) else 0.0, "skipped": skipped,
            "chains": {cid: s.summary() for cid, s in sorted(stats.items())}}


def run_batch(chains="all", ensembles=("ginibre",), ns=(4,), count: int = 200,
              seed: int = 1, tol: float = 1e-8, alphas=None, fs=FUNCTIONS,
              keep_verdicts: bool = True, command: str = "batch") -> RunReport:
    """Evaluate chains on every sample of every ``(ensemble, n)``.

    With ``chains="all"`` a chain is skipped on ensembles whose samples do not
    meet its input requirements (for example positive-pair chains run on the
    psd ensembles only).  Explicitly named chains are never skipped, so a
    mismatched ensemble surfaces as an error.
    """
    explicit = chains != "all"
    chain_ids = [c.id for c in list_chains()] if not explicit else list(chains)
    for cid in chain_ids:
        get_chain(cid)
    ensembles = list(ENSEMBLES) if ensembles == "all" else list(ensembles)
    alphas = alpha_grid(seed) if alphas is None else [float(a) for a in alphas]
    fs = list(fs)
    functions = {name: parse_function(name) for name in fs}
    config = {"chains": chains if not explicit else chain_ids, "ensembles": ensembles,
              "ns": list(ns), "count": count, "seed": seed, "tol": tol,
              "alphas": alphas, "fs": fs}

    stats: dict[str, ChainStats] = {}
    rows = []
    skipped = 0
    for ensemble, n in product(ensembles, ns):
        cfg = GeneratorConfig(ensemble, n, seed, count)
        for index in range(count):
            single = pair = vectors = None
            for cid in chain_ids:
                sig = get_chain(cid).signature
                if sig == SINGLE:
                    single = single or Operands(generate(cfg, index))
                    ops = single
                elif sig in (PAIR, POSITIVE_PAIR, HERMITIAN_PAIR):
                    pair = pair or Operands(*generate_pair(cfg, index))
                    ops = pair
                else:
                    vectors = vectors or Operands(*generate_vectors(cfg, index))
                    ops = vectors
                for f_name, alpha in _param_sets(cid, alphas, fs):
                    if not explicit and not applicable(cid, ensemble, f_name):
                        skipped += 1
                        continue
                    v = evaluate_chain(cid, f=functions.get(f_name), alpha=alpha, tol=tol,
                                       operands=ops)
                    stats.setdefault(cid, ChainStats()).add(v)
                    if keep_verdicts or not v.passed:
                        rows.append(verdict_row(v, ensemble=ensemble, n=n, sample_index=index))
    return RunReport(__version__, command, config, rows, _summarize(stats, skipped))


# ---------------------------------------------------------------------------
# worked examples

WORKED_EXAMPLES = ("cor5-2x2", "nilpotent-sharpness", "hermitian-sharpness",
                  "remark-counterexamples")

NILPOTENT_2X2 = np.array([[0.0, 2.0], [0.0, 0.0]], dtype=complex)


def _close(x, y, tol):
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def worked_example(example_id: str) -> RunReport:
    """Run the pinned inputs of a worked example and compare with pinned outputs."""
    verdicts, checks = [], []

    def check(name, ok, **values):
        checks.append({"name": name, "passed": bool(ok),
                       "values": {k: float(v) for k, v in values.items()}})

    if example_id == "cor5-2x2":
        v = evaluate_chain("CH-C3.14", NILPOTENT_2X2, np.eye(2))
        verdicts.append(v)
        lo, mid, hi = v.values
        check("lower term is ||AD*|| = 2", _close(lo, 2.0, 1e-12), value=lo)
        check("middle term is sqrt(61/12)", _close(mid, math.sqrt(61 / 12), 1e-12),
              value=mid, expected=math.sqrt(61 / 12))
        check("upper term is ||A*A+D*D||/2 = 5/2", _close(hi, 2.5, 1e-12), value=hi)
    elif example_id == "nilpotent-sharpness":
        v = evaluate_chain("CH-T2.1", NILPOTENT_2X2)
        verdicts.append(v)
        check("all four terms equal 1", all(_close(x, 1.0, 1e-9) for x in v.values),
              **{f"term{i}": x for i, x in enumerate(v.values, 1)})
        e = evaluate_chain("CH-EQV", NILPOTENT_2X2)
        verdicts.append(e)
        check("w(A) = ||A||/2 when A^2 = 0", _close(e.values[0], e.values[1], 1e-9),
              half_norm=e.values[0], w=e.values[1])
    elif example_id == "hermitian-sharpness":
        a = np.diag([1.0, -3.0]).astype(complex)
        for cid in ("CH-C2.17", "CH-KIT05"):
            verdicts.append(evaluate_chain(cid, a))
        o = Operands(a)
        check("w^2(A) = ||A*A+AA*||/2 = 9", _close(o.w2, o.kittaneh / 2, 1e-12)
              and _close(o.w2, 9.0, 1e-12), w2=o.w2, half_kittaneh=o.kittaneh / 2)
    elif example_id == "remark-counterexamples":
        a, d = np.eye(2, dtype=complex), -np.eye(2, dtype=complex)
        for cid in ("CH-T2.4", "CH-T2.6"):
            verdicts.append(evaluate_chain(cid, a, d))
        suite = equality_case_suite()
        for case in suite.cases:
            check(case.name, case.passed, **case.values)
        check("w(A*D) = 1 for A = I, D = -I",
              _close(numerical_radius(a.conj().T @ d), 1.0, 1e-12))
    else:
        raise KeyError(example_id)

    rows = [verdict_row(v, sample_index=0) for v in verdicts]
    stats = {}
    for v in verdicts:
        stats.setdefault(v.chain_id, ChainStats()).add(v)
    summary = _summarize(stats, 0)
    bad_checks = sum(not c["passed"] for c in checks)
    summary["checks_failed"] = bad_checks
    summary["failed"] += bad_checks
    return RunReport(__version__, f"paper-example {example_id}", {"example": example_id},
                     rows, summary, checks)
