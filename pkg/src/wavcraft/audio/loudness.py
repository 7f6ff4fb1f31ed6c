"""Integrated loudness (ITU-R BS.1770-4) and loudness normalization.

Measurement runs at 48 kHz so the standard K-weighting biquad coefficients
apply unmodified; inputs at other rates are resampled internally first.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import sosfilt

from ..errors import AudioError
from .filters import resample
from .waveform import Waveform

MEASUREMENT_RATE = 48_000
BLOCK_SECONDS = 0.400
HOP_SECONDS = 0.100  # 75 % overlap
ABSOLUTE_GATE_LUFS = -70.0
RELATIVE_GATE_LU = -10.0

# distinguished result when every block falls below the gates
BELOW_GATE = -math.inf

# K-weighting at 48 kHz: stage 1 high-shelf, stage 2 high-pass (RLB)
_K_WEIGHTING_SOS = np.array(
    [
        [1.53512485958697, -2.69169618940638, 1.19839281085285,
         1.0, -1.69065929318241, 0.73248077421585],
        [1.0, -2.0, 1.0,
         1.0, -1.99004745483398, 0.99007225036621],
    ]
)


def k_weight(samples: np.ndarray) -> np.ndarray:
    return sosfilt(_K_WEIGHTING_SOS, samples)


def _block_mean_squares(samples: np.ndarray, rate: int) -> np.ndarray:
    block = int(round(BLOCK_SECONDS * rate))
    hop = int(round(HOP_SECONDS * rate))
    n_blocks = 1 + (len(samples) - block) // hop
    if n_blocks <= 0:
        raise AudioError("loudness needs at least 0.4 s of audio")
    sq = np.square(samples)
    csum = np.concatenate([[0.0], np.cumsum(sq)])
    starts = np.arange(n_blocks) * hop
    return (csum[starts + block] - csum[starts]) / block


def measure_lufs(wav: Waveform) -> float:
    """Gated integrated loudness in LUFS; BELOW_GATE (-inf) for silence."""
    if wav.duration_seconds < BLOCK_SECONDS:
        raise AudioError(
            f"loudness needs at least {BLOCK_SECONDS} s, got {wav.duration_seconds:.3f} s"
        )
    work = wav if wav.sample_rate == MEASUREMENT_RATE else resample(wav, MEASUREMENT_RATE)
    weighted = k_weight(work.samples)
    z = _block_mean_squares(weighted, MEASUREMENT_RATE)

    with np.errstate(divide="ignore"):
        block_loudness = -0.691 + 10.0 * np.log10(z)
    above_abs = z[block_loudness > ABSOLUTE_GATE_LUFS]
    if not above_abs.size:
        return BELOW_GATE
    relative_gate = -0.691 + 10.0 * math.log10(float(np.mean(above_abs))) + RELATIVE_GATE_LU
    keep = (block_loudness > ABSOLUTE_GATE_LUFS) & (block_loudness > relative_gate)
    if not keep.any():
        return BELOW_GATE
    return -0.691 + 10.0 * math.log10(float(np.mean(z[keep])))


def normalize_lufs(wav: Waveform, target_lufs: float) -> Waveform:
    """Uniform gain bringing integrated loudness to the target within 0.2 LU."""
    current = measure_lufs(wav)
    if current == BELOW_GATE:
        raise AudioError("cannot normalize audio that is below the loudness gate")
    out = wav.replace_samples(wav.samples * 10.0 ** ((target_lufs - current) / 20.0))
    # gating may shift after the gain; one refinement pass pins the result
    achieved = measure_lufs(out)
    if achieved != BELOW_GATE and abs(achieved - target_lufs) > 0.05:
        out = out.replace_samples(out.samples * 10.0 ** ((target_lufs - achieved) / 20.0))
    return out
