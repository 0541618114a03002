"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 when at least one fails, 2 for usage
or input errors (bad files, unknown chain ids, precondition violations).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .chains import VECTORS, Operands, evaluate_chain, get_chain, list_chains
from .errors import NumradError
from .harness import (FUNCTIONS, WORKED_EXAMPLES, ChainStats, RunReport, _summarize,
                      alpha_grid, worked_example, run_batch, verdict_row)
from .matrixio import load_matrix, load_vector
from .radius import quantities
from .sampling import ENSEMBLES
from .spectral import parse_function

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def fmt(x) -> str:
    """17 significant digits: enough to read back the exact double."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering

def _render_text(report: RunReport) -> str:
    out = [f"numrad {report.tool_version}  {report.command}"]
    for row in report.verdicts:
        where = " ".join(f"{k}={fmt(row[k])}" for k in ("ensemble", "n", "sample_index")
                         if k in row)
        params = " ".join(f"{k}={fmt(v)}" for k, v in row["params"].items())
        out.append(f"{row['chain_id']}  {'PASS' if row['passed'] else 'FAIL'}  "
                   f"min_slack={fmt(row['min_slack'])}  {where} {params}".rstrip())
        for label, value in row["terms"]:
            out.append(f"    {label} = {fmt(value)}")
    for c in report.checks:
        vals = " ".join(f"{k}={fmt(v)}" for k, v in c["values"].items())
        out.append(f"check {'PASS' if c['passed'] else 'FAIL'}  {c['name']}  {vals}".rstrip())
    s = report.summary
    out.append(f"total={s.get('total', 0)} passed={s.get('passed', 0)} "
               f"failed={s.get('failed', 0)} worst_slack={fmt(float(s.get('worst_slack', 0.0)))}")
    for cid, cs in s.get("chains", {}).items():
        gaps = " ".join(f"{fmt(m)}/{fmt(lo)}" for m, lo in zip(cs["mean_gap"], cs["min_gap"]))
        out.append(f"  {cid}: {cs['passed']}/{cs['total']} worst_slack={fmt(cs['worst_slack'])}"
                   f" gaps(mean/min)={gaps}")
    return "\n".join(out) + "\n"


def _render_csv(report: RunReport) -> str:
    width = max((len(r["terms"]) for r in report.verdicts), default=0)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["chain_id", "ensemble", "n", "sample_index", "f", "alpha"]
    for i in range(1, width + 1):
        header += [f"term{i}_label", f"term{i}_value"]
    w.writerow(header + ["min_slack", "pass"])
    for r in report.verdicts:
        row = [r["chain_id"], r.get("ensemble", ""), r.get("n", ""), r.get("sample_index", ""),
               r["params"].get("f", ""), fmt(r["params"]["alpha"]) if "alpha" in r["params"]
               else ""]
        for label, value in r["terms"]:
            row += [label, fmt(value)]
        row += [""] * (2 * (width - len(r["terms"])))
        w.writerow(row + [fmt(r["min_slack"]), str(r["passed"]).lower()])
    return buf.getvalue()


def render(report: RunReport, form: str) -> str:
    if form == "json":
        # Python writes floats with the shortest repr that reads back exactly
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if form == "csv":
        return _render_csv(report)
    return _render_text(report)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def _alphas(text, seed):
    if text is None:
        return None
    if text == "grid":
        return alpha_grid(seed)
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"--alpha expects a number, a comma list or 'grid', got {text!r}")


def _fs(text):
    names = list(FUNCTIONS) if text in (None, "all") else text.split(",")
    for name in names:
        parse_function(name)
    return names


def cmd_quantities(args) -> int:
    a = load_matrix(args.matrix)
    q = quantities(a)
    if args.format == "json":
        text = json.dumps({"tool_version": __version__, "command": "quantities",
                           "operator_norm": q.operator_norm,
                           "numerical_radius": q.numerical_radius,
                           "crawford_number": q.crawford_number,
                           "method_notes": q.method_notes}, indent=2) + "\n"
    elif args.format == "csv":
        text = ("operator_norm,numerical_radius,crawford_number,method_notes\n"
                f"{fmt(q.operator_norm)},{fmt(q.numerical_radius)},"
                f"{fmt(q.crawford_number)},{q.method_notes}\n")
    else:
        text = (f"operator_norm = {fmt(q.operator_norm)}\n"
                f"numerical_radius = {fmt(q.numerical_radius)}\n"
                f"crawford_number = {fmt(q.crawford_number)}\n"
                f"method_notes = {q.method_notes}\n")
    _emit(text, args.out)
    return EXIT_PASS


def cmd_check(args) -> int:
    chain = get_chain(args.chain)
    loader = load_vector if chain.signature == VECTORS else load_matrix
    inputs = [loader(p) for p in args.files]
    ops = Operands(*inputs)
    alphas = _alphas(args.alpha, args.seed) or [None]
    fs = [parse_function(name) for name in args.f.split(",")] if args.f else [None]
    verdicts = []
    for f in (fs if "f" in chain.params else [None]):
        for alpha in (alphas if "alpha" in chain.params else [None]):
            verdicts.append(evaluate_chain(chain.id, f=f, alpha=alpha, tol=args.tol,
                                           operands=ops))
    stats = {}
    for v in verdicts:
        stats.setdefault(v.chain_id, ChainStats()).add(v)
    config = {"chain": chain.id, "files": [str(p) for p in args.files], "tol": args.tol,
              "alpha": args.alpha, "f": args.f}
    report = RunReport(__version__, "check", config,
                       [verdict_row(v, sample_index=0) for v in verdicts],
                       _summarize(stats, 0))
    _emit(render(report, args.format), args.out)
    return EXIT_FAIL if report.failed else EXIT_PASS


def _batch_config(args) -> dict:
    if args.replay:
        try:
            cfg = json.loads(Path(args.replay).read_text())["config"]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InputError(f"cannot replay {args.replay}: {exc}")
        return {"chains": cfg["chains"], "ensembles": cfg["ensembles"], "ns": cfg["ns"],
                "count": cfg["count"], "seed": cfg["seed"], "tol": cfg["tol"],
                "alphas": cfg["alphas"], "fs": cfg["fs"]}
    chains = "all" if args.chain in (None, "all") else args.chain.split(",")
    ensembles = list(ENSEMBLES) if args.ensemble == "all" else args.ensemble.split(",")
    for e in ensembles:
        if e not in ENSEMBLES:
            raise InputError(f"unknown ensemble {e!r}; choose from {', '.join(ENSEMBLES)}")
    try:
        ns = [int(x) for x in str(args.n).split(",")]
    except ValueError:
        raise InputError(f"--n expects integers, got {args.n!r}")
    return {"chains": chains, "ensembles": ensembles, "ns": ns, "count": args.count,
            "seed": args.seed, "tol": args.tol, "alphas": _alphas(args.alpha or "grid", args.seed),
            "fs": _fs(args.f)}


def cmd_batch(args) -> int:
    cfg = _batch_config(args)
    report = run_batch(**cfg, keep_verdicts=not args.failures_only)
    _emit(render(report, args.format), args.out)
    return EXIT_FAIL if report.failed else EXIT_PASS


def cmd_worked_example(args) -> int:
    if args.example not in WORKED_EXAMPLES:
        raise InputError(f"unknown example {args.example!r}; choose from "
                         f"{', '.join(WORKED_EXAMPLES)}")
    report = worked_example(args.example)
    _emit(render(report, args.format), args.out)
    return EXIT_FAIL if report.failed else EXIT_PASS


def cmd_catalog(args) -> int:
    infos = list_chains()
    if args.format == "json":
        text = json.dumps([info._asdict() for info in infos], indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "signature", "kind", "params", "anchor"])
        for i in infos:
            w.writerow([i.id, i.signature, i.kind, " ".join(i.params), i.anchor])
        text = buf.getvalue()
    else:
        text = "".join(f"{i.id:<14} {i.signature:<15} {i.anchor}\n" for i in infos)
    _emit(text, args.out)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="numrad", description=(
        "Numerical radius, Crawford number and operator inequality checks."))
    p.add_argument("--version", action="version", version=f"numrad {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", help="write the report here instead of stdout")

    q = sub.add_parser("quantities", help="||A||, w(A) and c(A) of a matrix file")
    q.add_argument("matrix")
    common(q)
    q.set_defaults(run=cmd_quantities)

    c = sub.add_parser("check", help="evaluate one chain on matrix (or vector) files")
    c.add_argument("--chain", required=True)
    c.add_argument("files", nargs="+")
    c.add_argument("--tol", type=float, default=1e-8)
    c.add_argument("--alpha", help="a number, a comma list, or 'grid'")
    c.add_argument("--f", help="t, t^1.5, t^2 or a comma list")
    c.add_argument("--seed", type=int, default=1, help="seeds the random part of --alpha grid")
    common(c)
    c.set_defaults(run=cmd_check)

    b = sub.add_parser("batch", help="evaluate chains on sampled ensembles")
    b.add_argument("--chain", default="all", help="'all' or comma-separated chain ids")
    b.add_argument("--class", dest="ensemble", default="ginibre",
                   help=f"'all' or comma-separated from: {', '.join(ENSEMBLES)}")
    b.add_argument("--n", default="4", help="dimension or comma list of dimensions")
    b.add_argument("--count", type=int, default=200)
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--tol", type=float, default=1e-8)
    b.add_argument("--alpha", help="a number, a comma list, or 'grid' (default)")
    b.add_argument("--f", help="t, t^1.5, t^2, a comma list, or 'all' (default)")
    b.add_argument("--replay", help="rerun the config echoed in a JSON report")
    b.add_argument("--failures-only", action="store_true",
                   help="list failing verdicts only; statistics still cover every sample")
    common(b)
    b.set_defaults(run=cmd_batch)

    e = sub.add_parser("paper-example", help="reproduce a pinned worked example")
    e.add_argument("example", help=", ".join(WORKED_EXAMPLES))
    common(e)
    e.set_defaults(run=cmd_worked_example)

    k = sub.add_parser("catalog", help="list registered chains")
    common(k)
    k.set_defaults(run=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_PASS
    try:
        return args.run(args)
    except (NumradError, InputError, ValueError, KeyError) as exc:
        name = type(exc).__name__
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"numrad: {name}: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
