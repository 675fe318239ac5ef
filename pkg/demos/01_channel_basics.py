"""
Channel basics: skin depth, loop field and mutual inductance
=============================================================

A 30-turn, 12.7 cm coil tuned to 100 kHz, first in fresh water.
"""

import numpy as np

from mi_seclab import em_channel as em
from mi_seclab.geometry import FOOT, NodePose

coil = em.table_i_coil("rx")
print(f"resonance: {coil.resonant_frequency:.1f} Hz")

for name, medium in [("fresh water", em.FRESH_WATER), ("seawater", em.SEAWATER)]:
    print(f"skin depth in {name}: {em.skin_depth(100e3, medium):.3f} m")

# on-axis field of 1 A, with and without eddy loss
for d in (0.5, 1.0, 2.0, 4.0):
    b_air = em.axial_b_field(coil, 1.0, d, 0.0, 100e3, em.AIR)
    b_sea = em.axial_b_field(coil, 1.0, d, 0.0, 100e3, em.SEAWATER)
    print(f"d = {d:3.1f} m   B = {b_air:.3e} T (air)   {b_sea:.3e} T (seawater)")

# the general dipole form against the coaxial loop formula
tx = NodePose([0, 0, 0], [1, 0, 0])
for radii in (3, 5, 10, 20, 40):
    d = radii * coil.radius
    m_dip = em.mutual_inductance_general(coil, tx, coil, NodePose([d, 0, 0], [1, 0, 0]),
                                         em.AIR, 100e3)
    m_loop = em.mutual_inductance_coaxial(coil, coil, d)
    print(f"{radii:3d} radii: dipole {m_dip:.4e} H, loop {m_loop:.4e} H, "
          f"diff {abs(m_dip - m_loop) / m_loop:.2%}")

m = em.mutual_inductance_coaxial(coil, coil, 4 * FOOT)
print(f"M at 4 ft: {m:.4e} H, k = {m / coil.inductance:.2e}")

# tilt the receiver: coupling follows the cosine of the tilt
for deg in (0, 30, 60, 90):
    a = np.radians(deg)
    rx = NodePose([4 * FOOT, 0, 0], [np.cos(a), np.sin(a), 0])
    print(f"tilt {deg:2d} deg: M = {em.mutual_inductance_general(coil, tx, coil, rx, em.AIR, 100e3):+.4e} H")
