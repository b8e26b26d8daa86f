"""
How M(omega, B) behaves as the helices coil tighter
====================================================

M is the screw-difference integral of the symmetric pair A = -B. Its sign
decides whether the pair can be Möbius-stationary, and its growth in omega is
what the trend checks look at.
"""

import numpy as np

from helix_lab import eval_M, integrand_M

# The integrand is even, decays like 1/v^2 and oscillates with period 2 pi / omega.
v = np.linspace(-2, 2, 9)
print("integrand at omega = 10, B = 0.4:")
print(np.round(integrand_M(v, 0.4, 10.0), 5))

# Each evaluation comes back with an error bound that covers both the panel
# refinement and the analytic tail beyond the cutoff.
r = eval_M(0.4, 10.0)
print(f"\nM(10, 0.4) = {r.value:.15f}  +- {r.error_bound:.1e}  (cutoff {r.cutoff:.0f})")

# Now the omega sweep for radii below, at and above 1/2.
omegas = [5, 10, 20, 40, 80]
print("\n omega " + "".join(f"{'B=' + str(B):>14s}" for B in (0.3, 0.5, 0.7)))
for w in omegas:
    row = [eval_M(B, float(w)).value for B in (0.3, 0.5, 0.7)]
    print(f"{w:6d} " + "".join(f"{x:14.6f}" for x in row))

# B = 0.7 climbs steadily and B = 0.3 falls from omega = 10 on. Between
# omega = 5 and 10 the B = 0.3 column still rises, and at B = 1/2 M settles
# near 2 rather than near 0: the double-pole terms, which carry no factor
# (2B - 1), contribute an O(1) amount at every omega.
