"""
Timing errors
=============

A pulse that is dtau too long over-rotates by J dtau / hbar. The reachable
fidelity then drops below 1.
"""
from exchange_purification import analysis

j = 1.0  # micro-eV
print(" dtau [ns]  dalpha [rad]  f_max")
for dtau in [0.0, 0.02, 0.05, 0.08, 0.1, 0.12, 0.15]:
    r = analysis.robustness(analysis.pulse_deviation_to_angle(j, dtau), j)
    print(f"{dtau:9.3f}  {r.delta_alpha:12.5f}  {r.f_max_achievable:.6f}")

# the largest pulse-area error that still reaches 0.99
delta = analysis.robustness_threshold(0.99)
print(f"\nthreshold: dalpha = {delta:.6f} rad, "
      f"dtau = {1e3 * analysis.angle_to_pulse_deviation(delta, j):.1f} ps at J = {j} ueV")
