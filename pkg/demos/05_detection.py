"""
Can the legitimate pair notice the listener?
============================================

An eavesdropper that couples to the link loads it, and the receiver voltage
moves away from its two-coil value. The detector flags shifts above 5 %.
"""

import numpy as np

from mi_seclab import builtin_scenario, run
from mi_seclab.scenario import without_eve

scenario = builtin_scenario("config3")
table = run(scenario)
baseline = np.array(table.baselines)
shift = (table.column("v_rx_V") - baseline) / baseline

for angle, s, verdict in zip(table.column("sweep_value"), shift, table.column("detector")):
    print(f"{angle:5.0f} deg  shift {s:+.3%}  {verdict}")

control = run(without_eve(scenario))
print("two-coil control:", sorted(set(control.column("detector"))))

# a more sensitive detector catches the quieter placements too
strict = run(builtin_scenario("config3", threshold=0.003))
print("at 0.3 %:", list(strict.column("detector")))
