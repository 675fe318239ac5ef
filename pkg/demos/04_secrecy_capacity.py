"""
Secrecy capacity against receiver and eavesdropper placement
=============================================================

The receiver walks away from the transmitter while an eavesdropper sits
off to the side at four standoffs. Pushing the eavesdropper back raises
the secrecy capacity everywhere.
"""

import numpy as np

from mi_seclab import builtin_scenario, run
from mi_seclab.geometry import FOOT

table = run(builtin_scenario("secrecy_sweep"))
rx_ft = np.unique(table.column("sweep_value")) / FOOT
sc = table.column("sc_bits").reshape(4, -1)
eve_ft = table.column("eve_y_m").reshape(4, -1)[:, 0] / FOOT

print("Rx at (ft):   " + "".join(f"{x:7.1f}" for x in rx_ft))
for y, row in zip(eve_ft, sc):
    print(f"eve y {y:.1f} ft " + "".join(f"{v:7.2f}" for v in row))

# At high SNR the capacity gap is about log2(SNR_rx / SNR_e), so the noise
# floor cancels. Only once the eavesdropper drops near the floor does it matter.
for noise in (1e-12, 1e-9, 1e-6, 1e-3):
    t = run(builtin_scenario("secrecy_sweep", noise_power=noise))
    print(f"noise {noise:.0e} W: mean SC {t.column('sc_bits').mean():6.2f} bits/s/Hz")
