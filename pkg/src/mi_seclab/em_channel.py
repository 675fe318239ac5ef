"""Analytic magnetic-dipole channel between coils in a conductive medium.

Everything here is a closed-form expression: the on-axis loop field with
eddy-current attenuation, the general point-dipole field, flux linkage,
Faraday voltage, and mutual inductance (coaxial loop formula and the
orientation-aware dipole form).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    CouplingWarning,
    DegenerateGeometryError,
    InvalidArgumentError,
    NearFieldWarning,
)
from .geometry import NodePose

MU0 = 4e-7 * math.pi

SERIES = "series_capacitor"
PARALLEL = "parallel_capacitor"
TOPOLOGIES = (SERIES, PARALLEL)

# dipole model flagged below this many coil radii of separation
NEAR_FIELD_RADII = 3.0


@dataclass(frozen=True)
class CoilSpec:
    radius: float
    turns: int
    inductance: float
    capacitance: float
    topology: str = PARALLEL
    wire_resistance: float = 1.0
    load_resistance: float = 50.0

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidArgumentError(f"coil radius must be > 0, got {self.radius}")
        if int(self.turns) != self.turns or self.turns < 1:
            raise InvalidArgumentError(f"turns must be a positive integer, got {self.turns}")
        if not self.inductance > 0:
            raise InvalidArgumentError(f"inductance must be > 0, got {self.inductance}")
        if not self.capacitance > 0:
            raise InvalidArgumentError(f"capacitance must be > 0, got {self.capacitance}")
        if self.topology not in TOPOLOGIES:
            raise InvalidArgumentError(
                f"topology {self.topology!r} not one of {', '.join(TOPOLOGIES)}"
            )
        if self.wire_resistance < 0 or self.load_resistance < 0:
            raise InvalidArgumentError("resistances must be >= 0")
        object.__setattr__(self, "turns", int(self.turns))

    @property
    def area(self) -> float:
        return math.pi * self.radius**2

    @property
    def resonant_frequency(self) -> float:
        return 1.0 / (2.0 * math.pi * math.sqrt(self.inductance * self.capacitance))


@dataclass(frozen=True)
class Medium:
    conductivity: float = 0.01
    relative_permeability: float = 1.0
    noise_power: float = 1e-12

    def __post_init__(self):
        if not self.conductivity >= 0:
            raise InvalidArgumentError(
                f"conductivity must be >= 0, got {self.conductivity}"
            )
        if not self.relative_permeability > 0:
            raise InvalidArgumentError("relative permeability must be > 0")
        if not self.noise_power > 0:
            raise InvalidArgumentError(f"noise power must be > 0, got {self.noise_power}")

    @property
    def permeability(self) -> float:
        return MU0 * self.relative_permeability


# Default simulation coil: 12.7 cm, 30 turns, tuned to 100 kHz.
TABLE_I = dict(radius=0.127, turns=30, inductance=329.75e-6, capacitance=7.681e-9)
# Lab-bench coils (same geometry, different tuning parts), per node.
LAB_BENCH = {
    "tx": dict(radius=0.127, turns=30, inductance=449e-6, capacitance=5.62e-9),
    "rx": dict(radius=0.127, turns=30, inductance=447e-6, capacitance=5.62e-9),
    "eve": dict(radius=0.127, turns=30, inductance=446e-6, capacitance=5.62e-9),
}

FRESH_WATER = Medium(conductivity=0.01)
SEAWATER = Medium(conductivity=4.0)
AIR = Medium(conductivity=0.0)


def table_i_coil(role: str = "rx", wire_resistance: float = 1.0) -> CoilSpec:
    """Default 100 kHz coil for ``role``: the transmitter is series-tuned with no load,
    receivers are parallel-tuned with a 50 ohm load."""
    if role == "tx":
        return CoilSpec(**TABLE_I, topology=SERIES, wire_resistance=wire_resistance,
                        load_resistance=0.0)
    return CoilSpec(**TABLE_I, topology=PARALLEL, wire_resistance=wire_resistance,
                    load_resistance=50.0)


def skin_depth(frequency: float, medium: Medium) -> float:
    """Eddy-current skin depth in metres; ``inf`` for a non-conducting medium."""
    if not frequency > 0:
        raise InvalidArgumentError(f"frequency must be > 0, got {frequency}")
    if medium.conductivity < 0:
        raise InvalidArgumentError("negative conductivity")
    loss = math.pi * frequency * medium.permeability * medium.conductivity
    if loss == 0.0:
        return math.inf
    return 1.0 / math.sqrt(loss)


def eddy_factor(distance: float, frequency: float, medium: Medium) -> float:
    return math.exp(-distance / skin_depth(frequency, medium))


def axial_b_field(coil: CoilSpec, current, distance_d, angle_theta, frequency, medium):
    """Loop field magnitude at distance ``d`` along the axis, scaled by cos(theta)
    and the eddy attenuation exp(-sqrt(d^2 + r^2) / delta).

    With zero conductivity the attenuation factor is exactly one.
    """
    if distance_d < 0:
        raise InvalidArgumentError("distance must be >= 0")
    r2 = coil.radius**2
    rho = r2 + distance_d**2
    b = (medium.permeability * coil.turns * current * r2 * math.cos(angle_theta)
         / (2.0 * rho**1.5))
    return b * eddy_factor(math.sqrt(rho), frequency, medium)


def magnetic_moment(coil: CoilSpec, current, theta=0.0):
    return coil.turns * current * coil.area * math.cos(theta)


def _separation(p_from, p_to):
    d = np.asarray(p_to, dtype=float) - np.asarray(p_from, dtype=float)
    dist = float(np.linalg.norm(d))
    if dist == 0.0:
        raise DegenerateGeometryError("source and observation points coincide")
    return d / dist, dist


def dipole_b_field(coil: CoilSpec, pose: NodePose, current, point, frequency, medium):
    """Complex B-field phasor (tesla, shape (3,)) of a coil treated as a point dipole."""
    u, dist = _separation(pose.position, point)
    m_hat = pose.axis
    moment = coil.turns * current * coil.area
    shape = 3.0 * np.dot(m_hat, u) * u - m_hat
    scale = medium.permeability / (4.0 * math.pi * dist**3) * eddy_factor(dist, frequency, medium)
    return shape * (scale * moment)


def flux_through(coil: CoilSpec, pose: NodePose, field):
    """Total flux linkage N * A * (B . n) of a coil in a uniform field."""
    return coil.turns * coil.area * np.dot(np.asarray(field), pose.axis)


def induced_voltage(flux, frequency):
    """EMF phasor -j*omega*flux; its magnitude is 2*pi*f*|flux|."""
    if not frequency > 0:
        raise InvalidArgumentError(f"frequency must be > 0, got {frequency}")
    return -1j * 2.0 * math.pi * frequency * flux


def mutual_inductance_coaxial(tx: CoilSpec, rx: CoilSpec, d, relative_permeability=1.0):
    """Mutual inductance of two coaxial loops a distance ``d`` apart (loop-on-axis form)."""
    if d < 0:
        raise InvalidArgumentError("distance must be >= 0")
    num = (relative_permeability * MU0 * math.pi * tx.turns * tx.radius**2
           * rx.turns * rx.radius**2)
    return num / (2.0 * math.sqrt((tx.radius**2 + d**2) ** 3))


def mutual_inductance_general(coil_a: CoilSpec, pose_a: NodePose,
                              coil_b: CoilSpec, pose_b: NodePose,
                              medium: Medium, frequency) -> float:
    """Signed dipole-dipole mutual inductance including eddy attenuation.

    The pair is put in a canonical order first so that swapping the
    arguments returns the identical float.
    """
    key_a = (tuple(pose_a.position), tuple(pose_a.axis))
    key_b = (tuple(pose_b.position), tuple(pose_b.axis))
    if key_b < key_a:
        coil_a, pose_a, coil_b, pose_b = coil_b, pose_b, coil_a, pose_a

    u, dist = _separation(pose_a.position, pose_b.position)
    if dist < NEAR_FIELD_RADII * max(coil_a.radius, coil_b.radius):
        warnings.warn(
            f"coil separation {dist:.4g} m is under {NEAR_FIELD_RADII:g} radii; "
            "dipole coupling is approximate here",
            NearFieldWarning, stacklevel=2,
        )
    na, nb = pose_a.axis, pose_b.axis
    shape = 3.0 * np.dot(na, u) * np.dot(nb, u) - np.dot(na, nb)
    strength = (medium.permeability * coil_a.turns * coil_a.area * coil_b.turns * coil_b.area
                / (4.0 * math.pi * dist**3))
    return float(strength * shape * eddy_factor(dist, frequency, medium))


def coupling_coefficient(m, la, lb) -> float:
    """|M| / sqrt(La * Lb); warns when the result exceeds one."""
    if not (la > 0 and lb > 0):
        raise InvalidArgumentError("inductances must be > 0")
    k = abs(m) / math.sqrt(la * lb)
    if k > 1.0:
        warnings.warn(f"coupling coefficient {k:.4g} exceeds 1", CouplingWarning, stacklevel=2)
    return k
