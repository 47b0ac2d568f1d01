"""Gate-state duality and absolutely maximally entangled states.

A gate U on n parties maps to the pure state |U> on 2n parties whose
amplitudes are the matrix elements of U over sqrt(D).  The entangling power
of U grows with the total entanglement of |U>, and U saturates the upper
bound exactly when |U> is absolutely maximally entangled: every reduction
to at most n parties maximally mixed.
"""

import numpy as np

from epower import (
    GateMatrix,
    choi_state,
    epower_one_tangle,
    haar_unitaries,
    is_ame,
    one_tangle,
    upper_bound_one_tangle,
)
from epower.gates import fredkin, h_u8, identity_gate

for name, gate in (
    ("identity", identity_gate([2, 2, 2])),
    ("fredkin", fredkin()),
    ("random U(8)", GateMatrix(haar_unitaries(8, 1, 1)[0], (2, 2, 2))),
    ("hermitian +-1/sqrt(8) gate", h_u8()),
):
    psi = choi_state(gate)
    eps = epower_one_tangle(gate).total
    tangle = one_tangle(psi)
    ame = is_ame(psi)
    print(f"{name:>28}: eps_1 = {eps:.9f}   one-tangle of |U> = {tangle:.9f}   "
          f"AME: {ame.passed} (dev {ame.max_deviation:.2e})")

bound = upper_bound_one_tangle((2, 2, 2))
print()
print(f"three-qubit bound {bound} is attained by the +-1/sqrt(8) gate, whose dual")
print("six-qubit state has every 1-, 2- and 3-party reduction maximally mixed.")
