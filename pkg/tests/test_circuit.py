import math

import numpy as np
import pytest

from mi_seclab.circuit import (
    DriveSpec,
    ImpedanceMatrix,
    Node,
    build_network,
    frequency_response,
    power_balance,
    self_impedance,
    solve,
    solve_network,
    tap_impedance,
)
from mi_seclab.em_channel import AIR, FRESH_WATER, SEAWATER, TABLE_I, CoilSpec, table_i_coil
from mi_seclab.errors import DegenerateGeometryError, InvalidArgumentError, NumericError
from mi_seclab.geometry import FOOT, NodePose

X, Y = [1, 0, 0], [0, 1, 0]
TX = table_i_coil("tx")
RX = table_i_coil("rx")
F0 = TX.resonant_frequency


def node(name, pos, axis=X, coil=None):
    return Node(name, coil or (TX if name == "tx" else RX), NodePose(pos, axis))


def link(rx_x=4 * FOOT, eve=None):
    nodes = [node("tx", [0, 0, 0]), node("rx", [rx_x, 0, 0])]
    if eve is not None:
        nodes.append(node("eve", *eve))
    return nodes


# -- self impedance --------------------------------------------------------

def test_series_resonance_leaves_resistance():
    z = self_impedance(CoilSpec(**TABLE_I, topology="series_capacitor", wire_resistance=1.0,
                                load_resistance=0.0), F0)
    assert z.real == pytest.approx(1.0, rel=1e-12)
    assert abs(z.imag) < 1e-9


def test_parallel_open_load_reduces_to_series():
    par = CoilSpec(**TABLE_I, topology="parallel_capacitor", load_resistance=math.inf)
    ser = CoilSpec(**TABLE_I, topology="series_capacitor", load_resistance=0.0)
    for f in (80e3, 100e3, 120e3):
        assert self_impedance(par, f) == pytest.approx(self_impedance(ser, f), rel=1e-14)


def test_table_i_residual_reactance():
    w = 2 * math.pi * 1e5
    assert abs(1j * w * 329.75e-6 + 1 / (1j * w * 7.681e-9)) < 0.7
    assert abs(self_impedance(TX, 1e5).imag) < 0.7


def test_parallel_tap_is_c_parallel_r():
    w = 2 * math.pi * 1e5
    zc = 1 / (1j * w * RX.capacitance)
    assert tap_impedance(RX, 1e5) == pytest.approx(zc * 50 / (zc + 50), rel=1e-14)
    assert self_impedance(RX, 1e5) == pytest.approx(1.0 + 1j * w * RX.inductance + zc * 50 / (zc + 50))


# -- network assembly ------------------------------------------------------

def test_orthogonal_coils_have_zero_coupling():
    net, _ = build_network([node("tx", [0, 0, 0]), node("rx", [1, 0, 0], Y)], DriveSpec(), AIR)
    assert net.z[0, 1] == 0 and net.z[1, 0] == 0


def test_three_coil_matrix_symmetric():
    net, src = build_network(link(eve=([0, 3 * FOOT, 0],)), DriveSpec(), FRESH_WATER)
    assert net.z.shape == (3, 3)
    assert np.array_equal(net.z, net.z.T)
    assert np.all(np.diag(net.z).real >= 0)
    assert list(src) == [10, 0, 0]


def test_relabelling_permutes_consistently():
    nodes = link(eve=([1, 0.5, 0], [0.6, 0.8, 0]))
    order = [2, 0, 1]
    a, _ = build_network(nodes, DriveSpec(), FRESH_WATER)
    b, _ = build_network([nodes[i] for i in order], DriveSpec(), FRESH_WATER)
    assert np.array_equal(b.z, a.z[np.ix_(order, order)])
    sa = solve(nodes, DriveSpec(), FRESH_WATER)
    sb = solve([nodes[i] for i in order], DriveSpec(), FRESH_WATER)
    for name in ("tx", "rx", "eve"):
        assert sb.voltage(name) == pytest.approx(sa.voltage(name), rel=1e-12)


def test_duplicate_positions_rejected():
    with pytest.raises(DegenerateGeometryError):
        build_network([node("tx", [0, 0, 0]), node("rx", [0, 0, 0])], DriveSpec(), AIR)


def test_network_preconditions():
    with pytest.raises(InvalidArgumentError):
        build_network([node("tx", [0, 0, 0])], DriveSpec(), AIR)
    with pytest.raises(InvalidArgumentError):
        build_network(link(), DriveSpec(node="eve"), AIR)
    with pytest.raises(InvalidArgumentError):
        DriveSpec(amplitude=-1)


# -- solving ---------------------------------------------------------------

def test_single_coil_solve():
    z = self_impedance(TX, 1e5)
    net = ImpedanceMatrix(np.array([[z]]), ("tx",), 1e5, np.zeros((1, 1)),
                          np.array([0j]), np.zeros((1, 3)))
    sol = solve_network(net, [10.0])
    assert sol.currents[0] == pytest.approx(10.0 / z, rel=1e-14)


def test_decoupled_receiver_carries_no_current():
    sol = solve(link(rx_x=500.0), DriveSpec(), SEAWATER)
    assert abs(sol.current("rx")) < 1e-30


@pytest.mark.parametrize("f", [F0, 95e3, 104e3])
def test_two_coil_closed_form(f):
    nodes = link(rx_x=1.0)
    sol = solve(nodes, DriveSpec(frequency=f), FRESH_WATER)
    w = 2 * math.pi * f
    m = sol.m("tx", "rx")
    z1, z2 = self_impedance(TX, f), self_impedance(RX, f)
    expected = -1j * w * m * 10.0 / (z1 * z2 + w**2 * m**2)
    assert sol.current("rx") == pytest.approx(expected, rel=1e-9)
    assert sol.residual <= 1e-10


def test_power_balance_and_linearity():
    nodes = link(eve=([0.3, 0.4, 0.1], [0.2, 0.9, 0.1]))
    net, src = build_network(nodes, DriveSpec(), FRESH_WATER)
    sol = solve_network(net, src)
    p_in, p_out = power_balance(net, src, sol)
    assert p_in > 0
    assert p_out == pytest.approx(p_in, rel=1e-8)
    scaled = solve_network(net, 3.5 * src)
    assert np.allclose(scaled.load_voltages, 3.5 * sol.load_voltages, rtol=1e-13, atol=0)


def test_ill_conditioned_network_is_reported():
    # lossless series transmitter exactly at resonance, receiver effectively decoupled
    lossless = CoilSpec(**TABLE_I, topology="series_capacitor", wire_resistance=0.0,
                        load_resistance=0.0)
    nodes = [Node("tx", lossless, NodePose([0, 0, 0], X)), node("rx", [200.0, 0, 0])]
    with pytest.raises(NumericError, match="Hz"):
        solve(nodes, DriveSpec(frequency=F0), SEAWATER)


# -- frequency response ----------------------------------------------------

def test_frequency_response_peaks_at_resonance():
    grid = np.arange(80e3, 120e3 + 1, 100.0)
    resp = frequency_response(link(), DriveSpec(), FRESH_WATER, grid)
    assert [f for f, _ in resp] == list(grid)
    f_peak = max(resp, key=lambda fs: fs[1].voltage("rx"))[0]
    assert abs(f_peak - 100e3) / 100e3 <= 0.005


def test_frequency_response_flat_without_coupling():
    resp = frequency_response([node("tx", [0, 0, 0]), node("rx", [1, 0, 0], Y)],
                              DriveSpec(), AIR, [90e3, 100e3, 110e3])
    assert all(sol.voltage("rx") == 0 for _, sol in resp)


def test_frequency_response_grid_density_independent():
    fine = dict(frequency_response(link(), DriveSpec(), FRESH_WATER, np.arange(90e3, 110e3 + 1, 500)))
    coarse = frequency_response(link(), DriveSpec(), FRESH_WATER, np.arange(90e3, 110e3 + 1, 1000))
    for f, sol in coarse:
        assert np.array_equal(sol.currents, fine[f].currents)


def test_frequency_response_empty_grid():
    with pytest.raises(InvalidArgumentError):
        frequency_response(link(), DriveSpec(), AIR, [])


# -- eavesdropper perturbation ---------------------------------------------

def test_receiver_shift_with_eavesdropper_and_distance():
    """A third coaxial coil shifts V_rx, by less the further back it stands."""
    base = solve(link(), DriveSpec(), FRESH_WATER).voltage("rx")
    shifts = []
    for s in np.arange(2.0, 30.0, 0.5):
        sol = solve(link(eve=([-s * FOOT, 0, 0],)), DriveSpec(), FRESH_WATER)
        shifts.append(abs(sol.voltage("rx") - base))
    assert shifts[0] > 0
    assert all(b <= a for a, b in zip(shifts, shifts[1:]))
