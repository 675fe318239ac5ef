"""Node poses, angles, unit conversion and the sweep generators.

Positions are SI metres throughout; sweep angles are given in degrees and
converted once, here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import DegenerateGeometryError, InvalidArgumentError

FOOT = 0.3048

SWEEP_KINDS = ("translate", "orbit", "self_rotate", "standoff")
PLANE_NORMALS = {
    "xy": (0.0, 0.0, 1.0),
    "yz": (1.0, 0.0, 0.0),
    "zx": (0.0, 1.0, 0.0),
}

# counting slack for stop/step ratios that land a few ulps short of an integer
_COUNT_EPS = 1e-9


def ft_to_m(value):
    return value * FOOT


def m_to_ft(value):
    return value / FOOT


def vec3(values) -> np.ndarray:
    """Return a read-only float (3,) array, rejecting anything non-finite."""
    v = np.array(values, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise InvalidArgumentError(f"expected 3 components, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise InvalidArgumentError(f"non-finite vector component in {values!r}")
    v.setflags(write=False)
    return v


def unit(values) -> np.ndarray:
    v = np.array(vec3(values))
    n = np.linalg.norm(v)
    if n == 0.0:
        raise DegenerateGeometryError("cannot normalise a zero-length vector")
    v = v / n
    v.setflags(write=False)
    return v


def angle_between(a, b) -> float:
    """Angle in radians, in [0, pi], between two unit vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise InvalidArgumentError("angle_between got a non-finite vector")
    return float(np.arccos(np.clip(np.dot(a, b), -1.0, 1.0)))


def rotate(v, normal, angle) -> np.ndarray:
    """Rotate ``v`` by ``angle`` radians about the unit vector ``normal`` (right-hand rule)."""
    v = np.asarray(v, dtype=float)
    k = np.asarray(normal, dtype=float)
    c, s = math.cos(angle), math.sin(angle)
    return v * c + np.cross(k, v) * s + k * np.dot(k, v) * (1.0 - c)


@dataclass(frozen=True)
class NodePose:
    """Where a coil sits and which way its symmetry axis points."""

    position: np.ndarray
    axis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", vec3(self.position))
        object.__setattr__(self, "axis", unit(self.axis))

    def moved(self, position=None, axis=None) -> "NodePose":
        return NodePose(
            self.position if position is None else position,
            self.axis if axis is None else axis,
        )


Anchor = Union[str, Sequence[float], np.ndarray, None]


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter of a scenario.

    ``start``/``stop``/``step`` are metres for ``translate``/``standoff`` and
    degrees for ``orbit``/``self_rotate``. ``direction`` is only used by
    ``translate``; ``anchor`` (a node id or a point) by ``orbit`` and
    ``standoff``. ``sense`` picks the rotation direction about the plane
    normal.
    """

    kind: str
    subject: str
    start: float
    stop: float
    step: float
    anchor: Anchor = None
    plane: str = "xy"
    direction: tuple = (1.0, 0.0, 0.0)
    sense: str = "ccw"
    _direction: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in SWEEP_KINDS:
            raise InvalidArgumentError(
                f"sweep kind {self.kind!r} not one of {', '.join(SWEEP_KINDS)}"
            )
        for name in ("start", "stop", "step"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgumentError(f"sweep {name} must be finite")
        if self.step <= 0:
            raise InvalidArgumentError(f"sweep step must be > 0, got {self.step}")
        if self.start > self.stop:
            raise InvalidArgumentError(
                f"sweep start {self.start} is greater than stop {self.stop}"
            )
        if self.kind in ("orbit", "self_rotate"):
            if self.start < 0 or self.stop > 360:
                raise InvalidArgumentError("sweep angles must lie within [0, 360] degrees")
        if self.plane not in PLANE_NORMALS:
            raise InvalidArgumentError(
                f"plane {self.plane!r} not one of {', '.join(PLANE_NORMALS)}"
            )
        if self.sense not in ("ccw", "cw"):
            raise InvalidArgumentError(f"sense must be 'ccw' or 'cw', got {self.sense!r}")
        if self.kind in ("orbit", "standoff") and self.anchor is None:
            raise InvalidArgumentError(f"{self.kind} sweep needs an anchor")
        object.__setattr__(self, "direction", tuple(float(c) for c in self.direction))
        object.__setattr__(self, "_direction", unit(self.direction))

    @property
    def normal(self) -> np.ndarray:
        return np.array(PLANE_NORMALS[self.plane])

    @property
    def is_angular(self) -> bool:
        return self.kind in ("orbit", "self_rotate")

    def values(self) -> np.ndarray:
        count = int(math.floor((self.stop - self.start) / self.step + _COUNT_EPS)) + 1
        return self.start + self.step * np.arange(count)

    def __len__(self):
        return len(self.values())


def _anchor_point(anchor: Anchor, base: Mapping[str, NodePose]) -> np.ndarray:
    if isinstance(anchor, str):
        if anchor not in base:
            raise InvalidArgumentError(f"sweep anchor {anchor!r} is not a node")
        return base[anchor].position
    return vec3(anchor)


def generate_sweep(spec: SweepSpec, base: Mapping[str, NodePose]) -> list:
    """Poses of ``spec.subject`` at every sweep value, in sweep order.

    ``base`` maps node ids to their initial poses; the subject's initial pose
    is the sweep's starting point (its position at ``spec.start``).
    """
    if spec.subject not in base:
        raise InvalidArgumentError(f"sweep subject {spec.subject!r} is not a node")
    pose = base[spec.subject]
    values = spec.values()

    if spec.kind == "translate":
        d = spec._direction
        return [pose.moved(position=pose.position + (v - spec.start) * d) for v in values]

    anchor = _anchor_point(spec.anchor, base) if spec.anchor is not None else None

    if spec.kind == "standoff":
        offset = pose.position - anchor
        if np.linalg.norm(offset) == 0.0:
            raise DegenerateGeometryError("standoff subject starts on its anchor")
        u = unit(offset)
        return [pose.moved(position=anchor + v * u) for v in values]

    sign = 1.0 if spec.sense == "ccw" else -1.0
    normal = spec.normal
    angles = np.radians(values) * sign

    if spec.kind == "self_rotate":
        return [pose.moved(axis=rotate(pose.axis, normal, a)) for a in angles]

    # orbit
    radius_vec = pose.position - anchor
    radius = np.linalg.norm(radius_vec)
    if radius == 0.0:
        raise DegenerateGeometryError("orbit radius is zero (subject sits on its anchor)")
    if abs(np.dot(radius_vec, normal)) > 1e-9 * radius:
        raise InvalidArgumentError(
            f"orbit subject is not in the {spec.plane} plane through its anchor"
        )
    poses = []
    for a in angles:
        pos = anchor + rotate(radius_vec, normal, a)
        poses.append(NodePose(pos, anchor - pos))
    return poses
