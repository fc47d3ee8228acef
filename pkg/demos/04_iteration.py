"""
Iterating the protocol
======================

Each round consumes two copies of the current pair. In Werner mode the
output is twirled back to Werner form. The DEJMPS-style variant adds local
rotations and keeps the full Bell-diagonal state between rounds.
"""
import numpy as np

from exchange_purification import analysis
from exchange_purification.protocol import ProtocolConfig, ProtocolKind, RetwirlMode, iterate

werner = ProtocolConfig()
dejmps = ProtocolConfig(kind=ProtocolKind.DEJMPS_EXCHANGE,
                        mode=RetwirlMode.BELL_DIAGONAL_TRACKING)

trace = iterate(werner, 0.7, 0.99)
print("Werner mode from F = 0.7:", trace.steps, "rounds")
print("first rounds:", np.round(trace.fidelities[:5], 6))

tracked = iterate(dejmps, 0.7, 0.99)
print("DEJMPS-style from F = 0.7:", tracked.steps, "rounds")

print("\n  f0   werner  dejmps")
for f0 in np.round(np.arange(0.55, 0.96, 0.05), 2):
    print(f"{f0:5.2f}  {analysis.steps_to_target(f0, werner, 0.99):6d}  "
          f"{analysis.steps_to_target(f0, dejmps, 0.99):6d}")

# below the threshold the orbit falls back toward 1/4
low = iterate(werner, 0.45, 0.99)
print("\nfrom F = 0.45:", low.status, "after", low.steps, "rounds")
