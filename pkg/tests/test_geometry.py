import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mi_seclab.errors import DegenerateGeometryError, InvalidArgumentError
from mi_seclab.geometry import (
    NodePose,
    SweepSpec,
    angle_between,
    ft_to_m,
    generate_sweep,
    m_to_ft,
)

X, Y = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])


@pytest.mark.parametrize("a, b, expected", [
    (X, X, 0.0),
    (X, Y, math.pi / 2),
    (X, -X, math.pi),
])
def test_angle_between(a, b, expected):
    assert angle_between(a, b) == pytest.approx(expected, abs=1e-15)


def test_angle_between_rejects_nan():
    with pytest.raises(InvalidArgumentError):
        angle_between([np.nan, 0, 0], X)


def test_angle_between_clamps_rounding():
    a = np.array([1.0, 1e-9, 0])
    a /= np.linalg.norm(a)
    assert angle_between(a, a) == pytest.approx(0.0, abs=1e-7)


@pytest.mark.parametrize("ft, m", [(4, 1.2192), (0, 0.0), (1.5, 0.4572)])
def test_ft_to_m(ft, m):
    assert ft_to_m(ft) == pytest.approx(m, rel=1e-15)


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_ft_to_m_linear(a, b):
    assert math.isclose(ft_to_m(a + b), ft_to_m(a) + ft_to_m(b), rel_tol=1e-12, abs_tol=1e-9)


@given(st.floats(-1e4, 1e4))
def test_units_round_trip(v):
    assert m_to_ft(ft_to_m(v)) == pytest.approx(v, rel=1e-12, abs=1e-12)


def test_pose_normalises_axis():
    p = NodePose([0, 0, 0], [3, 4, 0])
    assert np.linalg.norm(p.axis) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        p.axis[0] = 2.0


def _orbit(start=0, stop=180, step=30, sense="cw"):
    return SweepSpec("orbit", "eve", start, stop, step, anchor=(0, 0, 0), sense=sense)


def test_orbit_start_and_quarter_turn():
    base = {"eve": NodePose([-ft_to_m(2), 0, 0], X)}
    poses = generate_sweep(_orbit(), base)
    assert np.allclose(poses[0].position, [-0.6096, 0, 0], atol=1e-15)
    assert np.allclose(poses[0].axis, X, atol=1e-15)
    assert np.allclose(poses[3].position, [0, 0.6096, 0], atol=1e-12)
    assert np.allclose(poses[3].axis, -Y, atol=1e-12)


def test_self_rotate_quarter_turn():
    base = {"eve": NodePose([1, 2, 3], X)}
    spec = SweepSpec("self_rotate", "eve", 0, 90, 90)
    poses = generate_sweep(spec, base)
    assert np.array_equal(poses[1].position, [1, 2, 3])
    assert np.allclose(poses[1].axis, Y, atol=1e-15)


def test_translate_and_standoff():
    base = {"eve": NodePose([0, 1, 0], X), "tx": NodePose([0, 0, 0], X)}
    t = generate_sweep(SweepSpec("translate", "eve", 0, 2, 0.5), base)
    assert [p.position[0] for p in t] == [0, 0.5, 1.0, 1.5, 2.0]
    assert all(np.array_equal(p.axis, X) for p in t)
    s = generate_sweep(SweepSpec("standoff", "eve", 2, 4, 1, anchor="tx"), base)
    assert np.allclose([p.position for p in s], [[0, 2, 0], [0, 3, 0], [0, 4, 0]])


def test_zero_orbit_radius():
    base = {"eve": NodePose([0, 0, 0], X)}
    with pytest.raises(DegenerateGeometryError):
        generate_sweep(_orbit(), base)


def test_orbit_outside_plane_rejected():
    base = {"eve": NodePose([1, 0, 1], X)}
    with pytest.raises(InvalidArgumentError):
        generate_sweep(_orbit(), base)


@pytest.mark.parametrize("kwargs", [
    dict(kind="translate", start=0, stop=1, step=0),
    dict(kind="translate", start=2, stop=1, step=0.5),
    dict(kind="self_rotate", start=0, stop=400, step=30),
    dict(kind="spiral", start=0, stop=1, step=1),
    dict(kind="orbit", start=0, stop=90, step=30),  # no anchor
])
def test_sweep_spec_validation(kwargs):
    with pytest.raises(InvalidArgumentError):
        SweepSpec(subject="eve", **kwargs)


@given(
    st.floats(0.05, 10), st.floats(0, 2 * math.pi),
    st.floats(-5, 5), st.floats(-5, 5),
    st.integers(1, 60), st.sampled_from(["ccw", "cw"]),
)
def test_orbit_invariants(radius, phase, ax, ay, step, sense):
    anchor = np.array([ax, ay, 0.3])
    start = anchor + radius * np.array([math.cos(phase), math.sin(phase), 0])
    base = {"eve": NodePose(start, [0, 0, 1]), "a": NodePose(anchor, X)}
    spec = SweepSpec("orbit", "eve", 0, 360, step, anchor="a", sense=sense)
    for pose in generate_sweep(spec, base):
        d = anchor - pose.position
        assert np.linalg.norm(d) == pytest.approx(radius, rel=1e-12)
        assert angle_between(pose.axis, d / np.linalg.norm(d)) == pytest.approx(0, abs=1e-7)
        # the arccos near 0 is ill-conditioned, check the dot product directly too
        assert np.dot(pose.axis, d / np.linalg.norm(d)) == pytest.approx(1.0, abs=1e-9)


@given(st.integers(0, 50), st.integers(0, 400), st.integers(1, 50))
def test_translate_point_count(start, span, step):
    start, stop, step = start * 0.1, (start + span) * 0.1, step * 0.1
    spec = SweepSpec("translate", "eve", start, stop, step)
    assert len(spec) == math.floor((stop - start) / step + 1e-9) + 1
    base = {"eve": NodePose([0, 0, 0], X)}
    assert len(generate_sweep(spec, base)) == len(spec)
