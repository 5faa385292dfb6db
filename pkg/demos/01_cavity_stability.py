"""
Cavity stability and maximum transmission distance
==================================================

The wireless link is an open laser resonator: mirror M1 and the pumped rod
(thin lens f) sit in the transmitter, mirror M2 rides on the receiver a
distance d away.  Power flows only while the resonator is stable, i.e.
0 < g1*g2 < 1, and that condition caps how far the receiver can go.
"""

import numpy as np

from resbeam import (
    CavityGeometry,
    g_parameters,
    is_stable,
    max_transmission_distance,
    stability_line,
    stable_distance_intervals,
)

# the reference transmitter: 60 mm body, 880 mm thermal lens, R1 = -1000 mm,
# with a receiver mirror picked from the through-origin design (demo 02)
geom = CavityGeometry(l=0.06, f=0.88, r1=-1.0, r2=5.246612466124661)

print("g-parameters vs distance")
for d in (0.5, 1.0, 2.0, 5.0, 8.0, 10.0, 10.5):
    der = g_parameters(geom, d)
    print(
        f"  d = {d:5.2f} m   L = {der.L:7.4f} m   g1 = {der.g1:+.4f}   "
        f"g2 = {der.g2:+.4f}   g1*g2 = {der.g1 * der.g2:+.4f}   "
        f"{'stable' if is_stable(geom, d) else 'unstable'}"
    )

# as d varies the point (g1, g2) slides along a straight line in the
# stability diagram; its placement decides the shape of the stable set
line = stability_line(geom)
print(f"\nstability line: g2 = {line.slope:.4f} * g1 + {line.intercept:.2e}")

ivals = stable_distance_intervals(geom, 20.0)
print("\nstable distance intervals (0..20 m):")
for lo, hi in ivals:
    print(f"  ({lo:.4f}, {hi:.4f}) m")
print("(the shared boundary at 5.1822 m is an isolated touch point where")
print(" g1 and g2 vanish together; the resonator blinks off exactly there)")

md = max_transmission_distance(geom)
print(f"\nmax transmission distance: {md.d_max:.4f} m, contiguous: {md.contiguous}")

# a cavity that is nowhere stable, for contrast: two flat mirrors sit on the
# g1*g2 = 1 boundary, which the strict condition excludes
flat = CavityGeometry(l=0.06, f=np.inf, r1=np.inf, r2=np.inf)
print(f"plane-parallel cavity stable anywhere: {not stable_distance_intervals(flat, 20.0).is_empty}")
