"""
Connected stability regions and receiver-mirror design
======================================================

A generic receiver curvature R2 leaves two disjoint stable distance bands
with a dead zone between them; a charging system wants one continuous band.
Two line placements in the stability diagram merge the bands: through the
origin with positive slope, or tangent to g1*g2 = 1 with negative slope.
Both have closed-form R2 solutions, and each R1 gives one of each.
"""

import numpy as np

from resbeam import connecting_r2, max_distance_vs_r1, r1_range_for_distance

L_TX, F_LENS = 0.06, 0.88

print("the two connected-branch receiver mirrors at R1 = -1000 mm:")
for branch in ("origin", "tangent"):
    r2 = connecting_r2(L_TX, F_LENS, -1.0, branch)
    print(f"  {branch:>8}: R2 = {r2:+.4f} m")

print("\nmax transmission distance vs R1 (both branches):")
grid = np.linspace(-1.5, -0.5, 21)
origin = max_distance_vs_r1(L_TX, F_LENS, grid, "origin")
tangent = max_distance_vs_r1(L_TX, F_LENS, grid, "tangent")
print("   R1 [m]    origin d_max    tangent d_max")
for i, r1 in enumerate(grid):
    o = origin.flags[i] or f"{origin.column('d_max_m')[i]:8.2f} m"
    t = tangent.flags[i] or f"{tangent.column('d_max_m')[i]:8.2f} m"
    print(f"  {r1:+.3f}    {o:>15}    {t:>15}")

# the blow-up near R1 = l - f = -0.82 m: there the line family degenerates
# and d_max grows without bound on the approach, then the through-origin
# branch loses its stable region entirely on the other side
print("\ntransmitter curvatures whose origin-branch design reaches >= 5 m:")
for lo, hi in r1_range_for_distance(5.0, L_TX, F_LENS, "origin", (-1.5, -0.5)):
    print(f"  R1 in [{lo:.4f}, {hi:.4f}] m")

print("\nsame question for 80 mm and 100 mm transmitters:")
for l_mm in (80, 100):
    ivals = r1_range_for_distance(5.0, l_mm / 1000.0, F_LENS, "origin", (-1.5, -0.5))
    spans = ", ".join(f"[{lo:.4f}, {hi:.4f}]" for lo, hi in ivals)
    print(f"  l = {l_mm} mm: {spans} m")
