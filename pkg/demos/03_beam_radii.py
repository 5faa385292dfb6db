"""
Gaussian mode radii along the link
==================================

Inside the stable range the resonator carries a TEM00 mode whose radius at
the rod, at M1, and at M2 sets the minimum component sizes.  The radii grow
toward the stability boundary and diverge right at it: the practical reach
ends a little before the mathematical one.
"""

from resbeam import CavityGeometry, beam_radii, connecting_r2

L_TX, F_LENS, R1, LAM = 0.06, 0.88, -1.0, 1.064e-6

for branch in ("origin", "tangent"):
    r2 = connecting_r2(L_TX, F_LENS, R1, branch)
    geom = CavityGeometry(l=L_TX, f=F_LENS, r1=R1, r2=r2)
    print(f"{branch} branch (R2 = {r2:+.3f} m):")
    print("   d [m]    on rod [mm]    on M1 [mm]    on M2 [mm]")
    for d in (0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 8.0, 10.0, 10.4):
        try:
            w = beam_radii(geom, d, LAM)
        except Exception:
            print(f"  {d:5.1f}    unstable")
            continue
        print(
            f"  {d:5.1f}    {w.w_gain * 1e3:9.4f}    {w.w_m1 * 1e3:9.4f}"
            f"    {w.w_m2 * 1e3:9.4f}"
        )
    print()

print("note the tangent branch: the receiver-side spot shrinks with distance")
print("while the transmitter-side spots grow, and it runs out of stability")
print("at half the origin-branch reach for the same R1.")
