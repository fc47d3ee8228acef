"""
One purification round, simulated and in closed form
=====================================================

Two Werner pairs go through U_13(alpha) (x) U_24(beta). Alice and Bob measure
qubits 3 and 4 and keep qubits 1 and 2 when the outcomes agree.
"""
import numpy as np

from exchange_purification import analysis, states
from exchange_purification.protocol import round_bbpssw, round_exchange

f = 0.7
pair = states.werner(f)

# the optimal pulse pair alpha = pi/2, beta = -pi/2
out = round_exchange(pair, pair, np.pi / 2, -np.pi / 2)
print(f"F = {f}: simulated F' = {out.fidelity:.12f}, closed form = "
      f"{analysis.fidelity_map_optimal(f):.12f}  (53/74 = {53 / 74:.12f})")
print(f"success probability = {out.success_prob:.6f}")

# the closed-form map agrees with the density-matrix simulation for any pulses
print("\n  alpha    beta     simulated     closed form   |diff|")
for alpha, beta in [(0.3, -1.2), (np.pi / 2, -np.pi / 4), (2.0, 0.5), (np.pi, np.pi / 3)]:
    sim = round_exchange(pair, pair, alpha, beta).fidelity
    closed = analysis.fidelity_map_heisenberg(f, alpha, beta)
    print(f"{alpha:7.3f} {beta:7.3f}  {sim:.10f}  {closed:.10f}  {abs(sim - closed):.1e}")

# reference: one round of the bilateral-CNOT protocol on the same input
print(f"\nbilateral CNOT round: F' = {round_bbpssw(pair, pair).fidelity:.6f} (25/34)")

# one-round gain over a grid of input fidelities
print("\n   F    exchange  pi/4 pulses  CNOT")
for f in np.linspace(0.5, 1.0, 6):
    w = states.werner(f)
    print(f"{f:5.2f}  {analysis.fidelity_map_optimal(f):.5f}   "
          f"{analysis.fidelity_map_inverse_case(f, np.pi / 4):.5f}    "
          f"{round_bbpssw(w, w).fidelity:.5f}")
