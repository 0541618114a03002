"""Run every registered inequality chain over random ensembles and read the tightness table.

A positive mean gap between consecutive terms shows how much room each bound
leaves on average; a min gap near zero shows that the bound is nearly attained
somewhere in the sample.

Run: python demos/inequality_batch.py
"""
from numrad.harness import run_batch

report = run_batch("all", ensembles=("ginibre", "psd", "nilpotent"), ns=(3,), count=40,
                   keep_verdicts=False)
s = report.summary
print(f"{s['total']} evaluations, {s['failed']} failed, worst slack {s['worst_slack']:.2e}, "
      f"{s['skipped']} skipped as inapplicable")
print(f"{'chain':<14}{'count':>7}  mean gaps (min gaps)")
for cid, cs in s["chains"].items():
    gaps = ", ".join(f"{m:.3f} ({lo:.1e})" for m, lo in zip(cs["mean_gap"], cs["min_gap"]))
    print(f"{cid:<14}{cs['total']:>7}  {gaps}")
