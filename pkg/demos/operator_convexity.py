"""Operator convexity: t^2 and t^1.5 pass every random probe, t^3 fails quickly.

A failed probe is a proof that the function is not operator convex; a clean run
is only evidence.

Run: python demos/operator_convexity.py
"""
import numpy as np

from numrad.spectral import apply_scalar_function, check_operator_convexity, loewner_gap, power

for r in (1.0, 1.5, 2.0, 3.0):
    report = check_operator_convexity(power(r), n=2, trials=300, seed=0)
    print(f"t^{r:g}: {report.violations:>4} violations, worst slack {report.worst_slack:+.3e}")

# a small integer witness for t^3, found by exhaustive search
x = np.diag([0.0, 1.0])
y = np.array([[1.0, -1.0], [-1.0, 2.0]])
cube = power(3)
lhs = apply_scalar_function(cube, (x + y) / 2)
rhs = (apply_scalar_function(cube, x) + apply_scalar_function(cube, y)) / 2
print("(f(X) + f(Y))/2 - f((X+Y)/2) has eigenvalues",
      np.round(np.linalg.eigvalsh(rhs - lhs), 6).tolist())
print(f"normalised Loewner gap {loewner_gap(lhs, rhs):+.4f}")
