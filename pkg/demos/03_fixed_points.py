"""
Fixed points of the fidelity map
================================

F = 1/4 is always fixed. The other two fixed points set the purification
threshold f_min and the reachable fidelity f_max.
"""
import numpy as np

from exchange_purification import analysis

fp = analysis.fixed_points(np.pi / 2, -np.pi / 2)
for name, value in fp.points().items():
    print(f"{name:>5} = {value:.6f}  ({fp.stability[name]})")

# along beta = -alpha the threshold is 1/2 and the ceiling is 1 whenever
# the pulse actually does something
print("\nbeta = -alpha")
for row in analysis.fmin_fmax_sweep([analysis.INVERSE_BETA], 9):
    if row.f_min is None:
        print(f"  alpha = {row.alpha:5.3f}  identity map, every F is fixed")
    else:
        print(f"  alpha = {row.alpha:5.3f}  f_min = {row.f_min:.6f}  f_max = {row.f_max:.6f}")

# with beta held at -pi/2 the window shrinks as alpha leaves pi/2
print("\nbeta = -pi/2")
for row in analysis.fmin_fmax_sweep([-np.pi / 2], 9, (np.pi / 4, 3 * np.pi / 4)):
    if row.f_min is None:
        print(f"  alpha = {row.alpha:5.3f}  no purification window")
    else:
        print(f"  alpha = {row.alpha:5.3f}  f_min = {row.f_min:.6f}  f_max = {row.f_max:.6f}")
