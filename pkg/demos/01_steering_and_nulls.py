"""Steering vectors, the separable inner product, and what a null looks like.

Run:  python3 demos/01_steering_and_nulls.py
"""

import numpy as np

from a2gbeam import ArrayGeometry, DirectionAngles, steering_vector
from a2gbeam.array import inner_product, inner_product_closed_form
from a2gbeam.beamform import SteeringBank, array_pattern, mpdrb, nsb, nsb_d
from a2gbeam.geometry import angles_from_xy

# A 16x16 half-wavelength array at 73.5 GHz.
geom = ArrayGeometry(16, 3e8 / 73.5e9)
print(f"element spacing {geom.spacing * 1e3:.3f} mm, {geom.size} elements")

# Every entry has unit modulus, so |e|^2 = M^2.
e = steering_vector(geom, DirectionAngles(0.3, 1.1))
print("norm^2 =", np.vdot(e.entries, e.entries).real)

# The inner product of two steering vectors factors into two Dirichlet kernels,
# one per array axis.  Direct summation and the closed form agree to round-off.
a, b = DirectionAngles(0.20, 0.4), DirectionAngles(0.25, -0.3)
print("direct     ", inner_product(steering_vector(geom, a), steering_vector(geom, b)))
print("closed form", inner_product_closed_form(geom, a, b))

# Four ground users about a kilometre apart, seen from 10 km up; user 0 is served.
xy = np.array([[2500.0, 2500.0], [3500.0, 2500.0], [2500.0, 1500.0], [1700.0, 3300.0]])
zen, az = angles_from_xy(xy[:, 0], xy[:, 1], 10_000.0)
bank = SteeringBank(geom, zen, az)

for name, design in (("NSB", nsb), ("NSB-D", nsb_d), ("MPDRB", mpdrb)):
    w = design(bank, 0)
    p = array_pattern(w, geom, bank.angles)
    depth = 10 * np.log10(p[0] / p[1:])
    # scale-free gain: |w^H e_0|^2 / (|w|^2 M^2), 0 dB for the matched filter
    gain = p[0] / (np.vdot(w.weights, w.weights).real * geom.size)
    print(f"{name:6s} gain {10 * np.log10(gain):6.2f} dB, null depth {depth.min():6.1f} dB")

# NSB-D also flattens the pattern around each null: compare the power a small
# step away from interferer 1.
near = DirectionAngles(zen[1] + 2e-4, az[1])
for name, design in (("NSB", nsb), ("NSB-D", nsb_d)):
    w = design(bank, 0)
    rel = array_pattern(w, geom, near) / array_pattern(w, geom, DirectionAngles(zen[0], az[0]))
    print(f"{name:6s} leakage 2e-4 rad off the null: {10 * np.log10(rel):.1f} dB")
