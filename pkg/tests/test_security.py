import math

import pytest
from hypothesis import given, strategies as st

from mi_seclab.errors import InvalidArgumentError
from mi_seclab.security import (
    CLEAR,
    SUSPECTED,
    detect_intrusion,
    secrecy_capacity,
    secrecy_report,
    snr,
    to_db,
)

nonneg = st.floats(0, 1e12, allow_nan=False)


def test_snr_values():
    assert snr(0.0, 50, 1e-12) == 0
    assert snr(math.sqrt(50e-12), 50, 1e-12) == pytest.approx(1.0)
    s = snr(1e-3, 50, 1e-12)
    assert s == pytest.approx(2e4, rel=1e-12)
    assert to_db(s) == pytest.approx(43.0, abs=0.05)


@pytest.mark.parametrize("r, n", [(0, 1e-12), (-5, 1e-12), (50, 0), (50, -1)])
def test_snr_rejects_nonpositive(r, n):
    with pytest.raises(InvalidArgumentError):
        snr(1.0, r, n)


def test_secrecy_capacity_values():
    assert secrecy_capacity(7.0, 7.0) == 0
    assert secrecy_capacity(3.0, 1.0) == 1.0
    assert secrecy_capacity(15.0, 0.0) == pytest.approx(4.0)
    assert secrecy_capacity(1.0, 3.0) == -1.0


def test_report_fields():
    rep = secrecy_report(1e-3, 2e-3, 50, 1e-12)
    assert rep.secrecy_capacity == math.log2(1 + rep.snr_rx) - math.log2(1 + rep.snr_e)
    assert not rep.positive_secrecy
    assert rep.clamped == 0.0
    assert rep.snr_rx_db == pytest.approx(to_db(2e4))


@given(nonneg, nonneg)
def test_antisymmetry(a, b):
    assert secrecy_capacity(a, b) == -secrecy_capacity(b, a)


moderate = st.floats(0, 1e6, allow_nan=False)


# bounded so that a step of d still moves log2(1 + snr) by more than an ulp
@given(moderate, moderate, st.floats(1e-2, 1e6))
def test_monotonicity(a, b, d):
    assert secrecy_capacity(a + d, b) > secrecy_capacity(a, b)
    assert secrecy_capacity(a, b + d) < secrecy_capacity(a, b)


def test_detector_examples():
    assert detect_intrusion(1.0, 1.0) == CLEAR
    assert detect_intrusion(1.0, 0.5, 0.05) == SUSPECTED
    assert detect_intrusion(1.0, 1.04) == CLEAR
    with pytest.raises(InvalidArgumentError):
        detect_intrusion(0.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        detect_intrusion(1.0, 1.0, 0.0)


@given(st.floats(1e-6, 1e3), st.floats(0, 1e3), st.integers(-40, 40))
def test_detector_scale_invariant(base, obs, exp):
    alpha = 2.0**exp  # power-of-two scaling is exact in binary floating point
    assert detect_intrusion(base, obs) == detect_intrusion(alpha * base, alpha * obs)
