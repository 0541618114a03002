"""How the convex-combination bounds on w^2(A) depend on alpha.

The bound ||alpha A*A + (1 - alpha) AA*|| is convex in alpha, so the best alpha
is found by golden-section search.  For normal A the two Gram matrices agree
and every alpha gives the same value.

Run: python demos/alpha_families.py
"""
import numpy as np

from numrad.chains import Operands, alpha_minimized_norm, evaluate_chain
from numrad.sampling import GeneratorConfig, generate

a = generate(GeneratorConfig("ginibre", 4, seed=2), 0)
ops = Operands(a)
print(f"w^2(A) = {ops.w2:.6f}")
for alpha in np.linspace(0, 1, 5):
    value = evaluate_chain("CH-C3.6", operands=ops, alpha=alpha).values[1]
    print(f"  alpha={alpha:.2f}: root-form bound {value:.6f}")
for mode in ("imp3", "gamma1", "gamma2", "cor1"):
    alpha, value = alpha_minimized_norm(a, mode)
    print(f"  best alpha for {mode:<6} = {alpha:.6f}, bound {value:.6f}")
