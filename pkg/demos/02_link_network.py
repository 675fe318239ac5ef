"""
Solving a coupled link
======================

Tx drives 10 V at 100 kHz into a series-tuned coil; Rx listens 4 ft away
through a parallel-tuned coil and a 50 ohm load.
"""

import numpy as np

from mi_seclab import DriveSpec, Node, NodePose, build_network, solve_network, power_balance
from mi_seclab.circuit import frequency_response
from mi_seclab.em_channel import FRESH_WATER, table_i_coil
from mi_seclab.geometry import FOOT

x = [1, 0, 0]
nodes = [Node("tx", table_i_coil("tx"), NodePose([0, 0, 0], x)),
         Node("rx", table_i_coil("rx"), NodePose([4 * FOOT, 0, 0], x))]

network, source = build_network(nodes, DriveSpec(), FRESH_WATER)
np.set_printoptions(precision=4)
print("impedance matrix (ohm):")
print(network.z)

sol = solve_network(network, source)
print(f"I_tx = {abs(sol.current('tx')):.4f} A   |V_rx| = {sol.voltage('rx'):.4f} V")
print(f"relative residual {sol.residual:.1e}")
p_in, p_loss = power_balance(network, source, sol)
print(f"power in {p_in:.4f} W, dissipated {p_loss:.4f} W")

# a coarse look at the resonance
grid = np.arange(90e3, 110e3 + 1, 2.5e3)
for f, s in frequency_response(nodes, DriveSpec(), FRESH_WATER, grid):
    print(f"{f / 1e3:6.1f} kHz  {'#' * int(200 * s.voltage('rx'))}")
