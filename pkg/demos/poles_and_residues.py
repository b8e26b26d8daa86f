"""
Poles of the rescaled integrand
===============================

In rescaled coordinates the poles of the symmetric-pair integrand are zeros of
h(z) = cos z -+ i z / (omega B). Closed-form seeds land close to them, Newton
finishes the job, and the argument principle confirms there is exactly one per
designated strip.
"""

import math
import warnings

from helix_lab import cplane
from helix_lab.cplane import Family, MeroParams

p = MeroParams(0.5, 20.0)  # omega B = 10

print("family  n   seed                     refined                   residual")
for fam in Family:
    for rec in cplane.poles(fam, [1, 2, 3] if fam is Family.MINUS else [0, 1, 2], p):
        print(f"{fam.value:6s} {rec.label:>3s}  {rec.seed:.6f}  {rec.refined:.6f}  {rec.residual:.1e}")

# Counting zeros strip by strip: each family owns every other strip.
print("\nstrip      minus  plus")
for k in range(-3, 3):
    rect = cplane.strip_rectangle(k, p)
    counts = [cplane.count_zeros_argument_principle(rect, fam, p) for fam in Family]
    print(f"({k:2d}pi, {k + 1:2d}pi)  {counts[0]:4d}  {counts[1]:4d}")

# As omega grows the seeds become exact: the ratio seed / pole tends to 1.
dev = [abs(r - 1) for r in cplane.pole_asymptotics_ratio(Family.MINUS, 1, [10, 100, 1000], 0.4)]
print("\n|seed/pole - 1| at omega = 10, 100, 1000:", ", ".join(f"{d:.2e}" for d in dev))

# Residues of the limit function, against their closed forms.
B = 0.4
res = cplane.residue_circular(1.5 * math.pi, 0.5, lambda z: cplane.eval_F_tilde_limit(z, Family.MINUS, B))
print(f"\nresidue at 3pi/2: {res:.12f}   closed form: {-1j * (2 * B - 1) / (12 * math.pi * B * B):.12f}")

# Finally the square -R, R, R + iR, -R + iR: the contour integral of F equals
# 2 pi i times the residues inside, so the real-line integral can be traded
# for a residue sum.
q = MeroParams(0.4, 10.0)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    for target in (2.0, 4.0, 8.0):
        R = cplane.auto_radius(target, q)
        chk = cplane.eta_contour_check(R, q)
        print(f"R = {R:7.4f}: {chk.n_poles:3d} poles, relative mismatch {chk.relative_mismatch:.1e}, "
              f"|top side| {abs(chk.contour.sides[2]):.1e}")
