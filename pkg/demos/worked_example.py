"""The 2x2 example behind the integral refinement of ||AD*|| <= ||A*A + D*D|| / 2.

With A = [[0, 2], [0, 0]] and D = I the three terms are 2, sqrt(61/12) and 5/2.

Run: python demos/worked_example.py
"""
import math

import numpy as np

from numrad.chains import evaluate_chain
from numrad.spectral import hh_integral_mean, power

a = np.array([[0, 2], [0, 0]], dtype=complex)
d = np.eye(2)

v = evaluate_chain("CH-C3.14", a, d)
for label, value in v.term_values:
    print(f"{label:>48} = {value:.15f}")
print(f"sqrt(61/12) = {math.sqrt(61 / 12):.15f}")
print(f"closed form vs quadrature: {v.metadata['closed_vs_quadrature']:.2e}")

# The middle term is the root of an operator Hermite-Hadamard mean.
m = (a.conj().T @ a + d.conj().T @ d) / 2  # diag(1/2, 5/2)
mean = hh_integral_mean(power(2), m, 2.0 * np.eye(2))
print("int_0^1 ((1-t) M + 2t I)^2 dt =", np.round(mean.real, 12).tolist(),
      " expected diag(21/12, 61/12)")
