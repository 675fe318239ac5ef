"""Scenario model, TOML loading, the built-in attack configurations, sweep
execution and CSV output.

A scenario file looks like::

    name = "my-run"
    units = "ft"                     # default length unit for the file

    [medium]
    conductivity = 0.01              # S/m
    noise_power = 1e-12              # W

    [drive]
    amplitude = 10.0                 # V, peak
    frequency = 100e3                # Hz

    [node.tx]
    position = [0, 0, 0]
    axis = [1, 0, 0]

    [node.rx]
    position = [4, 0, 0]

    [node.eve]
    position = [0, 3, 0]

    [sweep]
    kind = "translate"
    subject = "eve"
    start = 0
    stop = 4
    step = 0.5

See the README for every key.
"""

from __future__ import annotations

import copy
import csv
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import em_channel as em
from .circuit import DriveSpec, Node, build_network, solve_network
from .errors import (
    DegenerateGeometryError,
    InvalidArgumentError,
    NumericError,
    OverlapWarning,
    ScenarioError,
    UnknownScenarioError,
)
from .geometry import FOOT, NodePose, SweepSpec, generate_sweep
from .security import (
    CLEAR,
    DEFAULT_THRESHOLD,
    detect_intrusion,
    secrecy_capacity,
    snr,
    to_db,
)

NODE_IDS = ("tx", "rx", "eve")
UNITS = {"m": 1.0, "ft": FOOT}

COLUMNS = (
    "sweep_value",
    "eve_x_m", "eve_y_m", "eve_z_m",
    "eve_axis_x", "eve_axis_y", "eve_axis_z",
    "v_rx_V", "v_e_V",
    "snr_rx_dB", "snr_e_dB",
    "sc_bits", "sc_clamped_bits",
    "k_tx_rx", "k_tx_e", "k_rx_e",
    "m_tx_rx_H", "m_tx_e_H", "m_rx_e_H",
    "detector", "status",
)
_STRING_COLUMNS = ("detector", "status")

THREADS_ENV = "MI_SECLAB_THREADS"


@dataclass(frozen=True)
class Scenario:
    name: str
    nodes: tuple
    sweep: SweepSpec
    outer_sweep: Optional[SweepSpec] = None
    medium: em.Medium = em.FRESH_WATER
    drive: DriveSpec = DriveSpec()
    units: str = "m"
    outputs: tuple = COLUMNS
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        names = [n.name for n in self.nodes]
        for nm in names:
            if nm not in NODE_IDS:
                raise ScenarioError(f"unknown node id {nm!r}", f"node.{nm}")
        dupes = {nm for nm in names if names.count(nm) > 1}
        if dupes:
            nm = sorted(dupes)[0]
            raise ScenarioError(f"duplicate node id {nm!r}", f"node.{nm}")
        for required in ("tx", "rx"):
            if required not in names:
                raise ScenarioError(f"missing required section [node.{required}]",
                                    f"node.{required}")
        if self.drive.node != "tx":
            raise ScenarioError("the driven node must be tx", "drive.node")
        for label, sw in (("sweep", self.sweep), ("sweep.outer", self.outer_sweep)):
            if sw is None:
                continue
            if sw.subject not in names and sw.subject != "eve":
                raise ScenarioError(f"sweep subject {sw.subject!r} is not a node",
                                    f"{label}.subject")
            if isinstance(sw.anchor, str) and sw.anchor not in names:
                raise ScenarioError(f"sweep anchor {sw.anchor!r} is not a node",
                                    f"{label}.anchor")
        bad = [c for c in self.outputs if c not in COLUMNS]
        if bad:
            raise ScenarioError(f"unknown output column {bad[0]!r}", "output.columns")
        if self.units not in UNITS:
            raise ScenarioError(f"units must be one of {', '.join(UNITS)}", "units")
        if not self.threshold > 0:
            raise ScenarioError("detector threshold must be > 0", "output.threshold")
        # tx first, then rx, then eve
        object.__setattr__(self, "nodes",
                           tuple(sorted(self.nodes, key=lambda n: NODE_IDS.index(n.name))))

    def node(self, name) -> Node:
        for n in self.nodes:
            if n.name == name:
                return n
        raise KeyError(name)

    @property
    def has_eve(self) -> bool:
        return any(n.name == "eve" for n in self.nodes)

    @property
    def legit_nodes_move(self) -> bool:
        return any(sw is not None and sw.subject in ("tx", "rx")
                   for sw in (self.sweep, self.outer_sweep))

    def base_poses(self) -> dict:
        return {n.name: n.pose for n in self.nodes}

    def n_points(self) -> int:
        outer = 1 if self.outer_sweep is None else len(self.outer_sweep)
        return outer * len(self.sweep)


# ---------------------------------------------------------------------------
# dict / TOML parsing

_TOP_KEYS = {"name", "units", "medium", "drive", "node", "sweep", "output", "description"}
_MEDIUM_KEYS = {"preset", "conductivity", "relative_permeability", "noise_power"}
_DRIVE_KEYS = {"amplitude", "frequency"}
_NODE_KEYS = {"position", "axis", "units", "preset", "radius", "turns", "inductance",
              "capacitance", "topology", "wire_resistance", "load_resistance"}
_SWEEP_KEYS = {"kind", "subject", "start", "stop", "step", "units", "anchor", "plane",
               "direction", "sense", "outer"}
_OUTPUT_KEYS = {"columns", "threshold"}

_MEDIUM_PRESETS = {"fresh_water": em.FRESH_WATER, "seawater": em.SEAWATER, "air": em.AIR}


def _check_keys(table, allowed, where):
    if not isinstance(table, dict):
        raise ScenarioError(f"[{where}] must be a table", where)
    for key in table:
        if key not in allowed:
            name = f"{where}.{key}" if where else key
            raise ScenarioError(f"unknown key {name!r}", name)


def _number(table, key, where, default=None):
    value = table.get(key, default)
    if value is None:
        raise ScenarioError(f"missing required key {where}.{key}", f"{where}.{key}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where}.{key} must be a number, got {value!r}", f"{where}.{key}")
    return float(value)


def _unit_scale(units, where):
    if units not in UNITS:
        raise ScenarioError(f"{where}.units must be 'ft' or 'm', got {units!r}", f"{where}.units")
    return UNITS[units]


def _triple(value, where):
    if (not isinstance(value, (list, tuple)) or len(value) != 3
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in value)):
        raise ScenarioError(f"{where} must be a list of three numbers", where)
    return [float(c) for c in value]


def _parse_medium(table):
    _check_keys(table, _MEDIUM_KEYS, "medium")
    preset = table.get("preset", "fresh_water")
    if preset not in _MEDIUM_PRESETS:
        raise ScenarioError(f"unknown medium preset {preset!r}", "medium.preset")
    base = _MEDIUM_PRESETS[preset]
    try:
        return em.Medium(
            conductivity=_number(table, "conductivity", "medium", base.conductivity),
            relative_permeability=_number(table, "relative_permeability", "medium",
                                          base.relative_permeability),
            noise_power=_number(table, "noise_power", "medium", base.noise_power),
        )
    except InvalidArgumentError as exc:
        raise ScenarioError(f"[medium]: {exc}", "medium") from exc


def _parse_drive(table):
    _check_keys(table, _DRIVE_KEYS, "drive")
    try:
        return DriveSpec("tx", _number(table, "amplitude", "drive", 10.0),
                         _number(table, "frequency", "drive", 100e3))
    except InvalidArgumentError as exc:
        raise ScenarioError(f"[drive]: {exc}", "drive") from exc


def _parse_node(name, table, default_units):
    where = f"node.{name}"
    _check_keys(table, _NODE_KEYS, where)
    scale = _unit_scale(table.get("units", default_units), where)
    if "position" not in table:
        raise ScenarioError(f"missing required key {where}.position", f"{where}.position")
    position = np.array(_triple(table["position"], f"{where}.position")) * scale
    axis = _triple(table.get("axis", [1.0, 0.0, 0.0]), f"{where}.axis")

    preset = table.get("preset", "table_i")
    if preset == "table_i":
        params = dict(em.TABLE_I)
    elif preset == "lab_bench":
        params = dict(em.LAB_BENCH[name])
    else:
        raise ScenarioError(f"unknown coil preset {preset!r}", f"{where}.preset")
    if name == "tx":
        params.update(topology=em.SERIES, load_resistance=0.0)
    else:
        params.update(topology=em.PARALLEL, load_resistance=50.0)
    params["wire_resistance"] = 1.0
    for key in ("radius", "inductance", "capacitance", "wire_resistance", "load_resistance"):
        if key in table:
            params[key] = _number(table, key, where)
    if "turns" in table:
        turns = table["turns"]
        if isinstance(turns, bool) or not isinstance(turns, int):
            raise ScenarioError(f"{where}.turns must be an integer", f"{where}.turns")
        params["turns"] = turns
    if "topology" in table:
        params["topology"] = table["topology"]
    try:
        coil = em.CoilSpec(**params)
        pose = NodePose(position, axis)
    except (InvalidArgumentError, DegenerateGeometryError) as exc:
        raise ScenarioError(f"[{where}]: {exc}", where) from exc
    return Node(name, coil, pose)


def _parse_sweep(table, default_units, where="sweep"):
    _check_keys(table, _SWEEP_KEYS if where == "sweep" else _SWEEP_KEYS - {"outer"}, where)
    for key in ("kind", "subject"):
        if key not in table:
            raise ScenarioError(f"missing required key {where}.{key}", f"{where}.{key}")
    kind = table["kind"]
    angular = kind in ("orbit", "self_rotate")
    scale = 1.0 if angular else _unit_scale(table.get("units", default_units), where)
    anchor = table.get("anchor")
    if anchor is not None and not isinstance(anchor, str):
        anchor = tuple(np.array(_triple(anchor, f"{where}.anchor"))
                       * _unit_scale(table.get("units", default_units), where))
    kwargs = dict(
        kind=kind,
        subject=table["subject"],
        start=_number(table, "start", where) * scale,
        stop=_number(table, "stop", where) * scale,
        step=_number(table, "step", where) * scale,
        anchor=anchor,
        plane=table.get("plane", "xy"),
        sense=table.get("sense", "ccw"),
    )
    if "direction" in table:
        kwargs["direction"] = tuple(_triple(table["direction"], f"{where}.direction"))
    try:
        return SweepSpec(**kwargs)
    except (InvalidArgumentError, DegenerateGeometryError) as exc:
        raise ScenarioError(f"[{where}]: {exc}", where) from exc


def apply_overrides(data: dict, noise_power=None, conductivity=None, threshold=None,
                    frequency=None) -> dict:
    """Return a copy of a raw scenario dict with command-line overrides merged in."""
    data = copy.deepcopy(data)
    if noise_power is not None:
        data.setdefault("medium", {})["noise_power"] = noise_power
    if conductivity is not None:
        data.setdefault("medium", {})["conductivity"] = conductivity
    if frequency is not None:
        data.setdefault("drive", {})["frequency"] = frequency
    if threshold is not None:
        data.setdefault("output", {})["threshold"] = threshold
    return data


def scenario_from_dict(data: dict, name: Optional[str] = None) -> Scenario:
    _check_keys(data, _TOP_KEYS, "")
    units = data.get("units", "m")
    if units not in UNITS:
        raise ScenarioError(f"units must be 'ft' or 'm', got {units!r}", "units")
    nodes_table = data.get("node")
    if not isinstance(nodes_table, dict) or not nodes_table:
        raise ScenarioError("missing required section [node.tx]", "node.tx")
    for required in ("tx", "rx"):
        if required not in nodes_table:
            raise ScenarioError(f"missing required section [node.{required}]",
                                f"node.{required}")
    nodes = []
    for nid, table in nodes_table.items():
        if nid not in NODE_IDS:
            raise ScenarioError(f"unknown node id {nid!r} (expected tx, rx or eve)",
                                f"node.{nid}")
        nodes.append(_parse_node(nid, table, units))
    if "sweep" not in data:
        raise ScenarioError("missing required section [sweep]", "sweep")
    sweep_table = data["sweep"]
    sweep = _parse_sweep(sweep_table, units)
    outer = None
    if isinstance(sweep_table, dict) and "outer" in sweep_table:
        outer = _parse_sweep(sweep_table["outer"], units, "sweep.outer")
    output = data.get("output", {})
    _check_keys(output, _OUTPUT_KEYS, "output")
    columns = output.get("columns", list(COLUMNS))
    if not isinstance(columns, list) or not all(isinstance(c, str) for c in columns):
        raise ScenarioError("output.columns must be a list of column names", "output.columns")
    unknown = [c for c in columns if c not in COLUMNS]
    if unknown:
        raise ScenarioError(f"unknown output column {unknown[0]!r}", "output.columns")
    return Scenario(
        name=data.get("name", name or "scenario"),
        nodes=tuple(nodes),
        sweep=sweep,
        outer_sweep=outer,
        medium=_parse_medium(data.get("medium", {})),
        drive=_parse_drive(data.get("drive", {})),
        units=units,
        outputs=tuple(c for c in COLUMNS if c in columns),
        threshold=_number(output, "threshold", "output", DEFAULT_THRESHOLD),
    )


def read_scenario_dict(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"{path}: cannot read: {exc.strerror or exc}") from exc
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(f"{path}: parse error: {exc}") from exc


def load_scenario(path, **overrides) -> Scenario:
    """Parse and validate a TOML scenario file. Keyword overrides (``noise_power``,
    ``conductivity``, ``threshold``, ``frequency``) are merged before validation."""
    data = apply_overrides(read_scenario_dict(path), **overrides)
    try:
        return scenario_from_dict(data, name=Path(path).stem)
    except ScenarioError as exc:
        raise ScenarioError(f"{path}: {exc}", exc.field) from exc


# ---------------------------------------------------------------------------
# built-in configurations (lengths in feet)

def _legit(rx_x=4.0):
    return {
        "tx": {"position": [0, 0, 0], "axis": [1, 0, 0]},
        "rx": {"position": [rx_x, 0, 0], "axis": [1, 0, 0]},
    }


def _builtin_dicts():
    return {
        "config1": {
            "name": "config1", "units": "ft",
            "description": "eavesdropper far: (0,3,0) to (4,3,0) ft in 0.5 ft steps",
            "node": {**_legit(), "eve": {"position": [0, 3, 0], "axis": [1, 0, 0]}},
            "sweep": {"kind": "translate", "subject": "eve", "start": 0, "stop": 4,
                      "step": 0.5, "direction": [1, 0, 0]},
        },
        "config2": {
            "name": "config2", "units": "ft",
            "description": "eavesdropper near: (0,1.5,0) to (4,1.5,0) ft in 0.5 ft steps",
            "node": {**_legit(), "eve": {"position": [0, 1.5, 0], "axis": [1, 0, 0]}},
            "sweep": {"kind": "translate", "subject": "eve", "start": 0, "stop": 4,
                      "step": 0.5, "direction": [1, 0, 0]},
        },
        "config3": {
            "name": "config3", "units": "ft",
            "description": "eavesdropper orbits Tx at 2 ft, 0-180 deg in 30 deg steps",
            "node": {**_legit(), "eve": {"position": [-2, 0, 0], "axis": [1, 0, 0]}},
            "sweep": {"kind": "orbit", "subject": "eve", "anchor": "tx", "start": 0,
                      "stop": 180, "step": 30, "sense": "cw"},
        },
        "config4": {
            "name": "config4", "units": "ft",
            "description": "eavesdropper orbits Rx at 2 ft from (6,0,0) ft, 0-180 deg in 30 deg steps",
            "node": {**_legit(), "eve": {"position": [6, 0, 0], "axis": [-1, 0, 0]}},
            "sweep": {"kind": "orbit", "subject": "eve", "anchor": "rx", "start": 0,
                      "stop": 180, "step": 30, "sense": "ccw"},
        },
        "config5": {
            "name": "config5", "units": "ft",
            "description": "Tx-Rx 2 ft apart, eavesdropper at (4,0,0) ft spins 0-180 deg in 15 deg steps",
            "node": {**_legit(2.0), "eve": {"position": [4, 0, 0], "axis": [1, 0, 0]}},
            "sweep": {"kind": "self_rotate", "subject": "eve", "start": 0, "stop": 180,
                      "step": 15},
        },
        "secrecy_sweep": {
            "name": "secrecy_sweep", "units": "ft",
            "description": "Rx from 0.5 to 4 ft for eavesdropper at y = 4.5, 5.5, 6.5, 7.5 ft",
            "node": {**_legit(0.5), "eve": {"position": [0, 4.5, 0], "axis": [1, 0, 0]}},
            "sweep": {"kind": "translate", "subject": "rx", "start": 0.5, "stop": 4,
                      "step": 0.5, "direction": [1, 0, 0],
                      "outer": {"kind": "standoff", "subject": "eve", "anchor": "tx",
                                "start": 4.5, "stop": 7.5, "step": 1}},
        },
    }


BUILTIN_NAMES = tuple(_builtin_dicts())


def builtin_dict(name) -> dict:
    table = _builtin_dicts()
    if name not in table:
        raise UnknownScenarioError(name, BUILTIN_NAMES)
    return table[name]


def builtin_description(name) -> str:
    return builtin_dict(name)["description"]


def builtin_scenario(name, **overrides) -> Scenario:
    return scenario_from_dict(apply_overrides(builtin_dict(name), **overrides))


# ---------------------------------------------------------------------------
# execution

@dataclass
class ResultTable:
    """Sweep results in sweep order. ``rows`` hold every column of ``COLUMNS``;
    ``outputs`` is the subset written to CSV. ``networks`` keeps each row's
    solved network (``None`` for failed rows) for post-hoc checks."""

    scenario: str
    units: str
    angular: bool
    outputs: tuple
    rows: list = field(default_factory=list)
    networks: list = field(default_factory=list, repr=False)
    baselines: list = field(default_factory=list, repr=False)

    def __len__(self):
        return len(self.rows)

    def column(self, name) -> np.ndarray:
        idx = COLUMNS.index(name)
        values = [row[idx] for row in self.rows]
        if name in _STRING_COLUMNS:
            return np.array(values, dtype=object)
        return np.array(values, dtype=float)


def _placements(scenario: Scenario):
    base = scenario.base_poses()
    if scenario.outer_sweep is None:
        outer = [base]
    elif scenario.outer_sweep.subject not in base:
        outer = [base] * len(scenario.outer_sweep)
    else:
        poses = generate_sweep(scenario.outer_sweep, base)
        outer = [{**base, scenario.outer_sweep.subject: p} for p in poses]
    points = []
    for placed in outer:
        if scenario.sweep.subject not in base:
            points.extend((float(v), placed) for v in scenario.sweep.values())
            continue
        poses = generate_sweep(scenario.sweep, placed)
        for value, p in zip(scenario.sweep.values(), poses):
            points.append((float(value), {**placed, scenario.sweep.subject: p}))
    return points


def _nodes_at(scenario, placement, names=None):
    return [Node(n.name, n.coil, placement[n.name]) for n in scenario.nodes
            if names is None or n.name in names]


def _check_overlap(nodes):
    for i, a in enumerate(nodes):
        for b in nodes[:i]:
            gap = np.linalg.norm(a.pose.position - b.pose.position)
            if gap < a.coil.radius + b.coil.radius:
                warnings.warn(f"coils {b.name} and {a.name} are {gap:.4g} m apart and "
                              "would physically overlap", OverlapWarning, stacklevel=3)


def _baseline(scenario, placement) -> float:
    sol = solve_network(*build_network(_nodes_at(scenario, placement, ("tx", "rx")),
                                       scenario.drive, scenario.medium))
    return sol.voltage("rx")


_NAN = float("nan")


def _failed_row(value, placement, scenario, message):
    eve = placement.get("eve") if scenario.has_eve else None
    pos = list(eve.position) if eve is not None else [_NAN] * 3
    ax = list(eve.axis) if eve is not None else [_NAN] * 3
    return (value, *pos, *ax) + (_NAN,) * 12 + ("", f"error: {message}")


def _evaluate(scenario: Scenario, value, placement, baseline):
    nodes = _nodes_at(scenario, placement)
    try:
        _check_overlap(nodes)
        network, source = build_network(nodes, scenario.drive, scenario.medium)
        sol = solve_network(network, source)
        if baseline is None:
            baseline = _baseline(scenario, placement)
    except (NumericError, DegenerateGeometryError) as exc:
        return _failed_row(value, placement, scenario, exc), None, baseline

    rx = scenario.node("rx").coil
    tx = scenario.node("tx").coil
    noise = scenario.medium.noise_power
    k = em.coupling_coefficient
    v_rx = sol.voltage("rx")
    snr_rx = snr(v_rx, rx.load_resistance, noise)
    m_tr = sol.m("tx", "rx")
    if scenario.has_eve:
        eve = scenario.node("eve").coil
        pose = placement["eve"]
        v_e = sol.voltage("eve")
        snr_e = snr(v_e, eve.load_resistance, noise)
        sc = secrecy_capacity(snr_rx, snr_e)
        eve_cols = (*pose.position, *pose.axis)
        m_te, m_re = sol.m("tx", "eve"), sol.m("rx", "eve")
        k_te = k(m_te, tx.inductance, eve.inductance)
        k_re = k(m_re, rx.inductance, eve.inductance)
        verdict = detect_intrusion(baseline, v_rx, scenario.threshold)
    else:
        # no eavesdropper: capacity of the bare link, nothing to detect
        v_e = snr_e_db = _NAN
        sc = secrecy_capacity(snr_rx, 0.0)
        eve_cols = (_NAN,) * 6
        m_te = m_re = k_te = k_re = _NAN
        verdict = CLEAR
    row = (
        value, *eve_cols,
        v_rx, v_e,
        to_db(snr_rx), to_db(snr_e) if scenario.has_eve else snr_e_db,
        sc, max(sc, 0.0),
        k(m_tr, tx.inductance, rx.inductance), k_te, k_re,
        m_tr, m_te, m_re,
        verdict, "ok",
    )
    return tuple(float(c) if isinstance(c, (np.floating, float, int)) else c for c in row), \
        (network, source, sol), baseline


def _thread_count(threads):
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise InvalidArgumentError(f"{THREADS_ENV} must be an integer, got {env!r}")
        else:
            threads = os.cpu_count() or 1
    return max(1, int(threads))


def run(scenario: Scenario, threads=None) -> ResultTable:
    """Evaluate every sweep point; rows come back in sweep order.

    The eavesdropper-free Tx-Rx baseline is solved once when the legitimate
    pair is static and per point when the sweep moves it. Points whose solve
    fails get a row with ``status`` set to the error instead of aborting.
    """
    points = _placements(scenario)
    baseline = None
    if not scenario.legit_nodes_move:
        baseline = _baseline(scenario, scenario.base_poses())

    def work(point):
        value, placement = point
        return _evaluate(scenario, value, placement, baseline)

    n_threads = min(_thread_count(threads), max(1, len(points)))
    if n_threads == 1:
        results = [work(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(work, points))

    sweep = scenario.sweep
    table = ResultTable(scenario.name, scenario.units, sweep.is_angular, scenario.outputs)
    for row, net, base in results:
        table.rows.append(row)
        table.networks.append(net)
        table.baselines.append(base)
    return table


def without_eve(scenario: Scenario) -> Scenario:
    """The same scenario with the eavesdropper removed. A sweep of the absent
    eavesdropper still yields one row per sweep value."""
    nodes = tuple(n for n in scenario.nodes if n.name != "eve")
    return Scenario(scenario.name, nodes, scenario.sweep, scenario.outer_sweep,
                    scenario.medium, scenario.drive, scenario.units, scenario.outputs,
                    scenario.threshold)


# ---------------------------------------------------------------------------
# CSV

def _fmt(value):
    if isinstance(value, str):
        return value
    return format(float(value), ".9g")


def write_csv(table: ResultTable, target, columns=None):
    """Header then one line per row; floats with 9 significant digits.

    ``target`` is a path or an open text stream.
    """
    columns = tuple(columns or table.outputs)
    idx = [COLUMNS.index(c) for c in columns]
    if hasattr(target, "write"):
        _write_rows(target, table, columns, idx)
        return
    try:
        with open(target, "w", newline="", encoding="utf-8") as fh:
            _write_rows(fh, table, columns, idx)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV to {target}: {exc.strerror}") from exc


def _write_rows(fh, table, columns, idx):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(columns)
    for row in table.rows:
        writer.writerow([_fmt(row[i]) for i in idx])
