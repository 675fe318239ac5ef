"""Simulator for eavesdropping on underwater magnetic-induction links.

Coils are point magnetic dipoles coupled through a lossy medium; a mesh
solve of the resonant coil network gives the load voltages at the
legitimate receiver and the eavesdropper, from which SNR, secrecy
capacity and a simple intrusion detector follow.
"""

__version__ = "0.1.0"

from .circuit import (
    DriveSpec,
    ImpedanceMatrix,
    LinkSolution,
    Node,
    build_network,
    frequency_response,
    power_balance,
    self_impedance,
    solve,
    solve_network,
)
from .em_channel import (
    AIR,
    FRESH_WATER,
    MU0,
    SEAWATER,
    TABLE_I,
    CoilSpec,
    Medium,
    axial_b_field,
    coupling_coefficient,
    dipole_b_field,
    flux_through,
    induced_voltage,
    magnetic_moment,
    mutual_inductance_coaxial,
    mutual_inductance_general,
    skin_depth,
    table_i_coil,
)
from .errors import (
    CouplingWarning,
    DegenerateGeometryError,
    InvalidArgumentError,
    NearFieldWarning,
    NumericError,
    OverlapWarning,
    ScenarioError,
    UnknownScenarioError,
)
from .geometry import NodePose, SweepSpec, angle_between, ft_to_m, generate_sweep, m_to_ft
from .scenario import (
    BUILTIN_NAMES,
    COLUMNS,
    ResultTable,
    Scenario,
    builtin_scenario,
    load_scenario,
    run,
    scenario_from_dict,
    write_csv,
)
from .security import SecrecyReport, detect_intrusion, secrecy_capacity, secrecy_report, snr
