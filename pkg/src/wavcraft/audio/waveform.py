"""Mono waveform value type and sample-index helpers.

The whole pipeline works on immutable mono waveforms at an explicit sample
rate; 16 kHz is the working rate everywhere except super-resolution output
(48 kHz). Amplitudes are nominally in [-1, 1] but are never clipped inside
the engine; the final output is peak-limited only at export.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import AudioError

WORKING_RATE = 16_000
SR_OUTPUT_RATE = 48_000
EXPORT_PEAK_CEILING = 0.999


def seconds_to_samples(seconds: float, sample_rate: int) -> int:
    """Convert a time offset to a sample index (round-half-up)."""
    return int(math.floor(float(seconds) * sample_rate + 0.5))


@dataclass(frozen=True, eq=False)
class Waveform:
    """Immutable mono audio: float64 samples plus a sample rate in Hz."""

    samples: np.ndarray
    sample_rate: int
    # cached to avoid re-validating on every access
    _peak: float = field(init=False, repr=False, default=0.0)

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise AudioError(f"sample_rate must be positive, got {self.sample_rate}")
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise AudioError(f"waveform must be mono/1-D, got shape {arr.shape}")
        if arr.size and not np.isfinite(arr).all():
            raise AudioError("waveform contains NaN or Inf samples")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))
        object.__setattr__(self, "_peak", float(np.max(np.abs(arr))) if arr.size else 0.0)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_seconds(self) -> float:
        return self.samples.size / self.sample_rate

    @property
    def peak(self) -> float:
        return self._peak

    def rms(self) -> float:
        if not self.samples.size:
            return 0.0
        return float(np.sqrt(np.mean(np.square(self.samples))))

    def replace_samples(self, samples: np.ndarray) -> "Waveform":
        return Waveform(samples, self.sample_rate)


def silence(duration_seconds: float, sample_rate: int = WORKING_RATE) -> Waveform:
    n = seconds_to_samples(duration_seconds, sample_rate)
    return Waveform(np.zeros(n), sample_rate)


def peak_limit(wav: Waveform, ceiling: float = EXPORT_PEAK_CEILING) -> Waveform:
    """Uniform gain so the peak does not exceed `ceiling` (export-time only)."""
    if wav.peak <= ceiling or wav.peak == 0.0:
        return wav
    return wav.replace_samples(wav.samples * (ceiling / wav.peak))
