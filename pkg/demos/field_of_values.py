"""Where the numerical range sits: w(A), c(A) and the support function.

Run: python demos/field_of_values.py
"""
import numpy as np

from numrad.radius import (crawford_number, crawford_sample_oracle, numerical_radius,
                           numerical_radius_sample_oracle, quantities)

# A Jordan block has a disc for its numerical range: centre 3, radius 1/2.
jordan = np.array([[3, 1], [0, 3]], dtype=complex)
q = quantities(jordan)
print("Jordan block [[3, 1], [0, 3]]")
print(f"  ||A|| = {q.operator_norm:.12f}")
print(f"  w(A)  = {q.numerical_radius:.12f}   (far edge of the disc, 3.5)")
print(f"  c(A)  = {q.crawford_number:.12f}   (near edge of the disc, 2.5)")
print(f"  sweep: {q.method_notes}")

# Random unit vectors only ever see points inside W(A); they bracket the sweep
# from the inside and close in slowly.
for samples in (100, 10_000, 200_000):
    print(f"  {samples:>7} random vectors: max |<Ax,x>| = "
          f"{numerical_radius_sample_oracle(jordan, samples):.6f}, "
          f"min |<Ax,x>| = {crawford_sample_oracle(jordan, samples):.6f}")

# w is invariant under rotation A -> e^{i phi} A; the norm bounds always hold.
rng = np.random.default_rng(3)
a = (rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))) / np.sqrt(2)
w = numerical_radius(a)
print("\nGinibre 5x5")
print(f"  ||A||/2 = {np.linalg.norm(a, 2) / 2:.6f} <= w(A) = {w:.6f} <= ||A|| = "
      f"{np.linalg.norm(a, 2):.6f}")
print("  rotations:", [round(numerical_radius(np.exp(1j * p) * a), 12) for p in (0, 1, 2)])
print(f"  c(A) = {crawford_number(a)} (the origin lies inside W(A))")
