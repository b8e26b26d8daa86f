"""
Where the real and imaginary parts of h vanish
==============================================

Splitting h(x + iy) = 0 into real and imaginary parts gives two curves per
strip: Gamma_C from the cosine equation and Gamma_S from the sine equation.
They cross exactly once in each designated strip, at the pole. This script
prints (x, y) samples that any plotting tool can draw.
"""

import numpy as np

from helix_lab import cplane
from helix_lab.cplane import Family, MeroParams

p = MeroParams(0.5, 20.0)

curves = cplane.emit_branch_curves(1, p, samples=9)
print(f"strip {curves.strip[0]:.4f} .. {curves.strip[1]:.4f}, family {curves.family.value}")
print("Gamma_S (y as a function of x):")
for x, y in zip(curves.sine_x, curves.sine_y):
    print(f"  {x:8.4f} {y:8.4f}")
print("Gamma_C (x as a function of y):")
for x, y in zip(curves.cosine_x, curves.cosine_y):
    print(f"  {x:8.4f} {y:8.4f}")

# The crossing, found by root bracketing along Gamma_C, against the Newton pole.
for strip in (1, 2, 3):
    z = cplane.branch_intersection(strip, p)
    fam = Family.MINUS if strip % 2 else Family.PLUS
    rec = cplane.refine_pole(complex(z.real, z.imag), fam, p)
    print(f"strip {strip}: crossing {z:.10f}, pole {rec.refined:.10f}, gap {abs(z - rec.refined):.1e}")

# Gamma_C approaches the vertical asymptote x = 3 pi / 2 as y grows.
far = cplane.emit_branch_curves(1, p, samples=3, y_max=12.0)
print(f"\nGamma_C at y = 12: x - 3pi/2 = {far.cosine_x[-1] - 1.5 * np.pi:.2e}")
