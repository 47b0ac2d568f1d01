"""Diagonal three-qubit gates: closed form, reparametrization, maximum.

For diag(e^{i phi_1}, ..., e^{i phi_8}) the entangling power is 10/27 minus
twelve phase cosines, so the flat-measure ensemble mean is exactly 10/27.
Dropping local phases leaves three parameters delta_1..3; maximizing that
three-variable landscape gives 16/27, attained e.g. by the sign pattern
diag(1, 1, 1, -1, 1, -1, -1, -1).
"""

import numpy as np

from epower import epower_one_tangle, maximize_diagonal_epower, phases_from_omegas_deltas
from epower.gates import (
    diagonal_gate,
    epower_diagonal_closed,
    epower_diagonal_deltas,
    h_d8,
)

rng = np.random.default_rng(0)

print("closed form vs general evaluation on random phase vectors:")
for _ in range(3):
    phis = rng.uniform(0.0, 2.0 * np.pi, 8)
    closed = epower_diagonal_closed(phis)
    general = epower_one_tangle(diagonal_gate(phis)).total
    print(f"  closed {closed:.12f}   general {general:.12f}   diff {abs(closed - general):.1e}")

print()
print("the reduced form depends on the three deltas only:")
deltas = rng.uniform(0.0, 2.0 * np.pi, 3)
for _ in range(3):
    omegas = rng.uniform(0.0, 2.0 * np.pi, 4)
    value = epower_diagonal_closed(phases_from_omegas_deltas(omegas, deltas))
    print(f"  omegas {np.round(omegas, 3)} -> eps_1 = {value:.12f}")
print(f"  delta form gives           {epower_diagonal_deltas(deltas):.12f}")

print()
result = maximize_diagonal_epower(grid=64, seed=0)
print(f"maximum over diagonal gates: {result.value:.12f} (16/27 = {16 / 27:.12f})")
print(f"argmax deltas: {np.round(result.deltas, 6)}")
print(f"sign-pattern maximizer diag(1,1,1,-1,1,-1,-1,-1): "
      f"eps_1 = {epower_one_tangle(h_d8()).total:.12f}")
