"""SNR, secrecy capacity and the receiver-voltage intrusion detector."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgumentError

DEFAULT_NOISE_POWER = 1e-12
DEFAULT_THRESHOLD = 0.05

CLEAR = "clear"
SUSPECTED = "suspected"


def snr(load_voltage, load_resistance, noise_power) -> float:
    """Linear SNR of a load voltage: (V^2 / R) / noise_power."""
    if not load_resistance > 0:
        raise InvalidArgumentError(f"load resistance must be > 0, got {load_resistance}")
    if not noise_power > 0:
        raise InvalidArgumentError(f"noise power must be > 0, got {noise_power}")
    return (load_voltage**2 / load_resistance) / noise_power


def to_db(ratio) -> float:
    return 10.0 * math.log10(ratio) if ratio > 0 else -math.inf


def secrecy_capacity(snr_rx, snr_e) -> float:
    """log2(1 + SNR_rx) - log2(1 + SNR_e) in bits/s/Hz. Not clamped; may be negative."""
    if snr_rx < 0 or snr_e < 0:
        raise InvalidArgumentError("SNRs must be >= 0")
    return math.log2(1.0 + snr_rx) - math.log2(1.0 + snr_e)


@dataclass(frozen=True)
class SecrecyReport:
    snr_rx: float
    snr_e: float
    secrecy_capacity: float

    @property
    def snr_rx_db(self):
        return to_db(self.snr_rx)

    @property
    def snr_e_db(self):
        return to_db(self.snr_e)

    @property
    def positive_secrecy(self) -> bool:
        return self.secrecy_capacity > 0

    @property
    def clamped(self) -> float:
        return max(self.secrecy_capacity, 0.0)


def secrecy_report(v_rx, v_e, load_resistance, noise_power) -> SecrecyReport:
    s_rx = snr(v_rx, load_resistance, noise_power)
    s_e = snr(v_e, load_resistance, noise_power)
    return SecrecyReport(s_rx, s_e, secrecy_capacity(s_rx, s_e))


def detect_intrusion(baseline_v_rx, observed_v_rx, relative_threshold=DEFAULT_THRESHOLD) -> str:
    """Flag a third coil from the relative shift it causes in the receiver voltage."""
    if not baseline_v_rx > 0:
        raise InvalidArgumentError(f"baseline voltage must be > 0, got {baseline_v_rx}")
    if not relative_threshold > 0:
        raise InvalidArgumentError("threshold must be > 0")
    shift = abs(observed_v_rx - baseline_v_rx) / baseline_v_rx
    return SUSPECTED if shift > relative_threshold else CLEAR
