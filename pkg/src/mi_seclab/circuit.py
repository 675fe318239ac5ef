"""Coupled resonant coil network.

Each coil is one mesh: wire resistance, self inductance, a tuning capacitor
in series or in parallel with the load, and jwM coupling to every other
coil. Only the driven coil carries a source.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .em_channel import SERIES, CoilSpec, Medium, mutual_inductance_general
from .errors import DegenerateGeometryError, InvalidArgumentError, NumericError
from .geometry import NodePose

CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class Node:
    name: str
    coil: CoilSpec
    pose: NodePose


@dataclass(frozen=True)
class DriveSpec:
    node: str = "tx"
    amplitude: float = 10.0
    frequency: float = 100e3

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise InvalidArgumentError(f"drive amplitude must be >= 0, got {self.amplitude}")
        if not self.frequency > 0:
            raise InvalidArgumentError(f"drive frequency must be > 0, got {self.frequency}")


@dataclass(frozen=True)
class ImpedanceMatrix:
    """Mesh impedance matrix plus what is needed to read load voltages back out.

    ``taps[i]`` is the impedance across which coil i's load voltage appears
    (the load resistor for series tuning, the C||R block for parallel).
    """

    z: np.ndarray
    names: tuple
    frequency: float
    mutual: np.ndarray
    taps: np.ndarray
    positions: np.ndarray

    def index(self, name) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class LinkSolution:
    names: tuple
    currents: np.ndarray
    load_voltages: np.ndarray
    frequency: float
    mutual: np.ndarray
    residual: float

    def current(self, name):
        return self.currents[self.names.index(name)]

    def voltage(self, name) -> float:
        return float(self.load_voltages[self.names.index(name)])

    def m(self, a, b) -> float:
        return float(self.mutual[self.names.index(a), self.names.index(b)])


def _parallel(z1, r):
    if r == 0:
        return 0j
    if math.isinf(r):
        return z1
    return z1 * r / (z1 + r)


def tap_impedance(coil: CoilSpec, frequency) -> complex:
    omega = 2.0 * math.pi * frequency
    if coil.topology == SERIES:
        return complex(coil.load_resistance)
    return _parallel(1.0 / (1j * omega * coil.capacitance), coil.load_resistance)


def self_impedance(coil: CoilSpec, frequency) -> complex:
    if not frequency > 0:
        raise InvalidArgumentError(f"frequency must be > 0, got {frequency}")
    omega = 2.0 * math.pi * frequency
    z = coil.wire_resistance + 1j * omega * coil.inductance
    if coil.topology == SERIES:
        return z + 1.0 / (1j * omega * coil.capacitance) + coil.load_resistance
    return z + tap_impedance(coil, frequency)


def build_network(nodes: Sequence[Node], drive: DriveSpec, medium: Medium):
    """Assemble the mesh equations. Returns ``(ImpedanceMatrix, source_vector)``."""
    if len(nodes) < 2:
        raise InvalidArgumentError("a network needs at least two coils")
    names = tuple(n.name for n in nodes)
    if len(set(names)) != len(names):
        raise InvalidArgumentError(f"duplicate node names in {names}")
    if drive.node not in names:
        raise InvalidArgumentError(f"driven node {drive.node!r} not among {names}")

    f = drive.frequency
    omega = 2.0 * math.pi * f
    n = len(nodes)
    positions = np.array([nd.pose.position for nd in nodes])
    for i in range(n):
        for j in range(i):
            if np.array_equal(positions[i], positions[j]):
                raise DegenerateGeometryError(
                    f"nodes {names[j]!r} and {names[i]!r} share position {positions[i].tolist()}"
                )

    mutual = np.zeros((n, n))
    for i in range(n):
        for j in range(i):
            mutual[i, j] = mutual[j, i] = mutual_inductance_general(
                nodes[i].coil, nodes[i].pose, nodes[j].coil, nodes[j].pose, medium, f
            )
    z = 1j * omega * mutual
    for i, nd in enumerate(nodes):
        z[i, i] = self_impedance(nd.coil, f)
    taps = np.array([tap_impedance(nd.coil, f) for nd in nodes])

    source = np.zeros(n, dtype=complex)
    source[names.index(drive.node)] = drive.amplitude
    return ImpedanceMatrix(z, names, f, mutual, taps, positions), source


def solve_network(network: ImpedanceMatrix, source) -> LinkSolution:
    z = network.z
    source = np.asarray(source, dtype=complex)
    cond = np.linalg.cond(z)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise NumericError(
            f"impedance matrix is ill-conditioned (cond={cond:.3g}) at "
            f"{network.frequency:.9g} Hz for nodes "
            + ", ".join(f"{nm}@{p.tolist()}" for nm, p in zip(network.names, network.positions))
        )
    currents = np.linalg.solve(z, source)
    norm = np.linalg.norm(source)
    residual = float(np.linalg.norm(z @ currents - source) / norm) if norm > 0 else 0.0
    return LinkSolution(
        names=network.names,
        currents=currents,
        load_voltages=np.abs(currents * network.taps),
        frequency=network.frequency,
        mutual=network.mutual,
        residual=residual,
    )


def solve(nodes: Sequence[Node], drive: DriveSpec, medium: Medium) -> LinkSolution:
    return solve_network(*build_network(nodes, drive, medium))


def power_balance(network: ImpedanceMatrix, source, solution: LinkSolution):
    """(real power in from the source, real power burnt in all resistances), in watts.

    The coupling terms are purely reactive, so all loss sits on the diagonal.
    """
    i = solution.currents
    delivered = 0.5 * float(np.real(np.vdot(i, np.asarray(source))))
    dissipated = 0.5 * float(np.sum(np.real(np.diag(network.z)) * np.abs(i) ** 2))
    return delivered, dissipated


def frequency_response(nodes: Sequence[Node], drive: DriveSpec, medium: Medium, f_grid):
    """One network solve per frequency, returned as ``[(f, LinkSolution), ...]``."""
    f_grid = list(f_grid)
    if not f_grid:
        raise InvalidArgumentError("frequency grid is empty")
    out = []
    for f in f_grid:
        d = DriveSpec(drive.node, drive.amplitude, float(f))
        out.append((float(f), solve(nodes, d, medium)))
    return out
