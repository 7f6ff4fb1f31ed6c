"""Procedural source pool for the editing-task suite.

Clips are sums of enveloped partials placed inside the frequency band the
separation stub associates with their caption, and kept below 3.4 kHz so a
clip survives an 8 kHz round trip untouched in the evaluated band. No
broadband noise: exactness of the task constructions depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..audio import WORKING_RATE, Waveform
from ..backends.stubs import text_band

_ADJECTIVES = ("low", "deep", "mellow", "bright", "warm", "clear", "soft", "steady")
_TEXTURES = ("humming", "ringing", "buzzing", "whistling", "droning", "chiming", "pulsing")

_MAX_PARTIAL_HZ = 3400.0
_MIN_PARTIAL_HZ = 160.0


@dataclass(frozen=True)
class SourceClip:
    caption: str
    wav: Waveform


def _clip_caption(index: int) -> str:
    adjective = _ADJECTIVES[index % len(_ADJECTIVES)]
    texture = _TEXTURES[(index // len(_ADJECTIVES)) % len(_TEXTURES)]
    return f"a {adjective} {texture} tone"


def _render_clip(caption: str, seconds: float, rate: int, rng: np.random.Generator) -> Waveform:
    lo, hi = text_band(caption, rate)
    lo = max(lo, _MIN_PARTIAL_HZ)
    hi = min(hi, _MAX_PARTIAL_HZ)
    if hi <= lo:
        hi = min(lo + 300.0, _MAX_PARTIAL_HZ)
    n = int(round(seconds * rate))
    t = np.arange(n) / rate
    out = np.zeros(n)
    n_partials = int(rng.integers(2, 5))
    for k in range(n_partials):
        freq = float(rng.uniform(lo, hi))
        phase = float(rng.uniform(0, 2 * np.pi))
        out += (0.22 / (k + 1)) * np.sin(2 * np.pi * freq * t + phase)
    # slow tremolo keeps sidebands within a few Hz of each partial
    tremolo_hz = float(rng.uniform(2.0, 6.0))
    out *= 1.0 - 0.2 * (0.5 + 0.5 * np.sin(2 * np.pi * tremolo_hz * t))
    envelope = np.ones(n)
    edge = int(0.05 * rate)
    ramp = 0.5 - 0.5 * np.cos(np.pi * np.arange(edge) / edge)
    envelope[:edge] = ramp
    envelope[-edge:] = ramp[::-1]
    return Waveform(out * envelope, rate)


def synthetic_pool(
    count: int = 20,
    seconds: float = 5.0,
    rate: int = WORKING_RATE,
    seed: int = 0,
) -> list[SourceClip]:
    clips = []
    for index in range(count):
        caption = _clip_caption(index)
        rng = np.random.Generator(np.random.PCG64([seed, index]))
        clips.append(SourceClip(caption, _render_clip(caption, seconds, rate, rng)))
    return clips
