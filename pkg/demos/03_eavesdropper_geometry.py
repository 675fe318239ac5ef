"""
Where does an eavesdropper hear the most?
==========================================

Runs the five built-in placements and prints the listener's voltage along
each sweep.
"""

from mi_seclab import builtin_scenario, run
from mi_seclab.scenario import builtin_description

for name in ("config1", "config2", "config3", "config4", "config5"):
    table = run(builtin_scenario(name))
    print(f"\n{name}: {builtin_description(name)}")
    unit = "deg" if table.angular else "m"
    peak = max(table.column("v_e_V"))
    for value, v_e in zip(table.column("sweep_value"), table.column("v_e_V")):
        print(f"  {value:7.3f} {unit}  |V_E| = {v_e:.3e} V  {'*' * round(30 * v_e / peak)}")
