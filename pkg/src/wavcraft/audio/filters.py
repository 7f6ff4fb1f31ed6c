"""Butterworth low/high-pass filtering and band-limited resampling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import butter, firwin, resample_poly, sosfilt

from ..errors import AudioError
from .waveform import Waveform

ROLLOFFS_DB_PER_OCT = (6, 12, 18, 24)


@dataclass(frozen=True)
class FilterParams:
    kind: str  # "low_pass" | "high_pass"
    cutoff_hz: float
    rolloff_db_per_octave: int = 12

    def __post_init__(self):
        if self.kind not in ("low_pass", "high_pass"):
            raise AudioError(f"unknown filter kind {self.kind!r}")
        if self.rolloff_db_per_octave not in ROLLOFFS_DB_PER_OCT:
            raise AudioError(
                f"rolloff must be one of {ROLLOFFS_DB_PER_OCT}, got {self.rolloff_db_per_octave}"
            )
        if self.cutoff_hz <= 0:
            raise AudioError(f"cutoff must be positive, got {self.cutoff_hz}")


def snap_rolloff(value: float) -> int:
    """Nearest supported rolloff; sampled min/max ranges may land between steps."""
    return min(ROLLOFFS_DB_PER_OCT, key=lambda r: abs(r - value))


def biquad_filter(wav: Waveform, params: FilterParams) -> Waveform:
    """Butterworth filter of order rolloff/6 applied as cascaded sections.

    Output length equals input length; 6 dB/oct is a single first-order
    section, higher rolloffs use second-order sections.
    """
    nyquist = wav.sample_rate / 2
    if params.cutoff_hz >= nyquist:
        raise AudioError(f"cutoff {params.cutoff_hz} Hz >= Nyquist {nyquist} Hz")
    order = params.rolloff_db_per_octave // 6
    btype = "lowpass" if params.kind == "low_pass" else "highpass"
    sos = butter(order, params.cutoff_hz, btype=btype, fs=wav.sample_rate, output="sos")
    return wav.replace_samples(sosfilt(sos, wav.samples))


def butterworth_magnitude(freq_hz: float, cutoff_hz: float, order: int, kind: str) -> float:
    """Analytic |H(f)| of an order-n Butterworth low/high-pass (test oracle)."""
    ratio = freq_hz / cutoff_hz if kind == "low_pass" else cutoff_hz / max(freq_hz, 1e-12)
    return 1.0 / math.sqrt(1.0 + ratio ** (2 * order))


# windowed-sinc design: half-width in zero crossings of the prototype filter
# and Kaiser beta chosen so a tone at 0.9x the band edge stays within 0.1 dB
_RESAMPLE_HALF_WIDTH = 64
_RESAMPLE_KAISER_BETA = 8.6


def resample(wav: Waveform, new_rate: int) -> Waveform:
    """Polyphase windowed-sinc resampling; output length = round(n*new/old)."""
    if new_rate <= 0:
        raise AudioError(f"resample: target rate must be positive, got {new_rate}")
    if new_rate == wav.sample_rate or not len(wav):
        return Waveform(wav.samples, new_rate) if not len(wav) else wav
    g = math.gcd(wav.sample_rate, new_rate)
    up, down = new_rate // g, wav.sample_rate // g
    m = max(up, down)
    numtaps = 2 * _RESAMPLE_HALF_WIDTH * m + 1
    h = firwin(numtaps, 0.96 / m, window=("kaiser", _RESAMPLE_KAISER_BETA))
    out = resample_poly(wav.samples, up, down, window=h)
    target_len = int(math.floor(len(wav) * new_rate / wav.sample_rate + 0.5))
    if len(out) < target_len:
        out = np.concatenate([out, np.zeros(target_len - len(out))])
    return Waveform(out[:target_len], new_rate)
