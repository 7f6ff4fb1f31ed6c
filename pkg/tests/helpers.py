"""Shared signal builders for the test suite."""

from __future__ import annotations

import numpy as np

from wavcraft.audio import WORKING_RATE, Waveform


def make_tone(freq_hz: float, seconds: float, rate: int = WORKING_RATE,
              amplitude: float = 1.0) -> Waveform:
    t = np.arange(int(round(seconds * rate))) / rate
    return Waveform(amplitude * np.sin(2 * np.pi * freq_hz * t), rate)


def make_noise(seconds: float, rate: int = WORKING_RATE, rms: float = 0.1,
               seed: int = 0) -> Waveform:
    rng = np.random.default_rng(seed)
    samples = rng.standard_normal(int(round(seconds * rate)))
    samples *= rms / np.sqrt(np.mean(np.square(samples)))
    return Waveform(samples, rate)


def rich_clip(seconds: float = 10.0, rate: int = WORKING_RATE, seed: int = 0) -> Waveform:
    """Tonal content plus a little noise: a plausible stand-in for a recording."""
    rng = np.random.default_rng(seed)
    t = np.arange(int(round(seconds * rate))) / rate
    samples = (
        0.2 * np.sin(2 * np.pi * 350 * t)
        + 0.12 * np.sin(2 * np.pi * 920 * t + 0.7)
        + 0.05 * np.sin(2 * np.pi * 2100 * t + 1.3)
        + 0.02 * rng.standard_normal(t.size)
    )
    return Waveform(samples, rate)
