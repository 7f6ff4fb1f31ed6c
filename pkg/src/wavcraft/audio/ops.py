"""Non-generative editing operations: mixing, slicing, gain, noise, reverb.

All functions are pure; randomized ones take an explicit numpy Generator.
Mixing never normalizes or clips, so linearity laws hold exactly.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import AudioError
from .waveform import Waveform, seconds_to_samples


def _require_same_rate(wavs: Sequence[Waveform], what: str) -> int:
    rates = {w.sample_rate for w in wavs}
    if len(rates) > 1:
        raise AudioError(f"{what}: mismatched sample rates {sorted(rates)}")
    return rates.pop()


def mix(entries: Sequence[tuple[Waveform, float]]) -> Waveform:
    """Sum waveforms, each shifted to start at its onset in seconds."""
    if not entries:
        raise AudioError("mix: empty entry list")
    for _, onset in entries:
        if onset < 0:
            raise AudioError(f"mix: negative onset {onset}")
    rate = _require_same_rate([w for w, _ in entries], "mix")
    offsets = [seconds_to_samples(onset, rate) for _, onset in entries]
    total = max(off + len(w) for (w, _), off in zip(entries, offsets))
    out = np.zeros(total)
    for (w, _), off in zip(entries, offsets):
        out[off:off + len(w)] += w.samples
    return Waveform(out, rate)


def concat(wavs: Sequence[Waveform]) -> Waveform:
    if not wavs:
        raise AudioError("concat: empty list")
    rate = _require_same_rate(wavs, "concat")
    return Waveform(np.concatenate([w.samples for w in wavs]), rate)


def split(wav: Waveform, break_points: Sequence[float]) -> list[Waveform]:
    """Cut at the given times; returns len(break_points)+1 segments that
    partition the input exactly (half-open sample ranges)."""
    duration = wav.duration_seconds
    prev = 0.0
    for t in break_points:
        if t <= prev or t >= duration:
            raise AudioError(
                f"split: break points must be strictly increasing within (0, {duration:g}), got {list(break_points)}"
            )
        prev = t
    cuts = [0] + [seconds_to_samples(t, wav.sample_rate) for t in break_points] + [len(wav)]
    return [Waveform(wav.samples[a:b], wav.sample_rate) for a, b in zip(cuts, cuts[1:])]


def clip(wav: Waveform, onset: float, offset: float) -> Waveform:
    duration = wav.duration_seconds
    if not (0 <= onset < offset <= duration):
        raise AudioError(f"clip: need 0 <= onset < offset <= {duration:g}, got [{onset}, {offset}]")
    a = seconds_to_samples(onset, wav.sample_rate)
    b = seconds_to_samples(offset, wav.sample_rate)
    return Waveform(wav.samples[a:b], wav.sample_rate)


def length_seconds(wav: Waveform) -> float:
    return wav.duration_seconds


def adjust_gain_db(wav: Waveform, gain_db: float) -> Waveform:
    return wav.replace_samples(wav.samples * (10.0 ** (float(gain_db) / 20.0)))


def sample_range(lo: float, hi: float, rng: np.random.Generator) -> float:
    """Uniform draw in [lo, hi]; collapses to the point when lo == hi."""
    if lo > hi:
        raise AudioError(f"sample_range: min {lo} > max {hi}")
    if lo == hi:
        return float(lo)
    return float(rng.uniform(lo, hi))


def add_noise_snr(wav: Waveform, snr_db: float, rng: np.random.Generator) -> Waveform:
    """Add gaussian noise scaled so the signal/noise RMS ratio hits snr_db exactly."""
    signal_rms = wav.rms()
    if signal_rms == 0.0:
        raise AudioError("add_noise_snr: silent input has no defined SNR")
    raw = rng.standard_normal(len(wav))
    raw_rms = float(np.sqrt(np.mean(np.square(raw)))) or 1.0
    noise = raw * (signal_rms / (raw_rms * 10.0 ** (float(snr_db) / 20.0)))
    return wav.replace_samples(wav.samples + noise)


def convolve_rir(wav: Waveform, ir: Waveform) -> Waveform:
    """Apply an impulse response: full linear convolution, truncated to the
    input length and peak-matched to the input."""
    if not len(ir):
        raise AudioError("convolve_rir: empty impulse response")
    if not len(wav):
        raise AudioError("convolve_rir: empty input")
    if ir.sample_rate != wav.sample_rate:
        raise AudioError(
            f"convolve_rir: sample rate mismatch {wav.sample_rate} vs {ir.sample_rate}"
        )
    from scipy.signal import fftconvolve

    full = fftconvolve(wav.samples, ir.samples, mode="full")
    out = full[: len(wav)]
    out_peak = float(np.max(np.abs(out))) if out.size else 0.0
    if out_peak > 0 and wav.peak > 0:
        out = out * (wav.peak / out_peak)
    return Waveform(out, wav.sample_rate)
