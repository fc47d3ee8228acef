"""
Exchange pulses as two-qubit gates
==================================

A Heisenberg pulse of area alpha gives U(alpha). Half a SWAP comes out at
alpha = pi/2, a full SWAP at alpha = pi, and the XY coupling gives iSWAP.
"""
import numpy as np

from exchange_purification import gates, qcore

np.set_printoptions(precision=3, suppress=True)

# sqrt(SWAP) is the pi/2 pulse with its global phase removed
root = gates.sqrt_swap()
print("sqrt(SWAP) =")
print(root)
print("sqrt(SWAP)^2 == SWAP:", np.allclose(root @ root, gates.swap_gate()))

# the pulse area is all that matters, so pulses add
a, b = 0.4, 1.1
print("U(a) U(b) == U(a + b):",
      np.allclose(gates.heisenberg_u(a) @ gates.heisenberg_u(b), gates.heisenberg_u(a + b)))

# an XY pulse of area -pi is exactly iSWAP
print("xy_u(-pi) == iSWAP:", np.allclose(gates.xy_u(-np.pi), gates.iswap()))

# a CNOT built from two sqrt(SWAP) pulses and single-qubit rotations;
# with the inverse root in both slots the sequence lands on CNOT
for label, u in [("literal sequence", gates.cnot_from_sequence()),
                 ("inverse-root sequence", gates.cnot_from_sequence_inverse_root())]:
    d = qcore.dist_up_to_phase(u, gates.cnot_direct())
    print(f"{label:>22}: distance to CNOT up to phase = {d:.3g}")
