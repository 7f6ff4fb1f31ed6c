"""Shoebox room reverb via the image-source method.

Image sources are enumerated up to a reflection order; each contributes an
impulse of amplitude (1 - absorption)^order / distance at delay
distance / 343 m/s. The synthesized response is then applied with
convolve_rir.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import AudioError
from .ops import convolve_rir, sample_range
from .waveform import Waveform

SPEED_OF_SOUND = 343.0  # m/s
DEFAULT_MAX_ORDER = 10


@dataclass(frozen=True)
class RoomSpec:
    size_x: float
    size_y: float
    size_z: float
    absorption: float
    source_x: float
    source_y: float
    source_z: float
    mic_distance: float
    mic_azimuth_deg: float
    mic_elevation_deg: float

    def __post_init__(self):
        if min(self.size_x, self.size_y, self.size_z) <= 0:
            raise AudioError("room dimensions must be positive")
        if not (0 < self.absorption <= 1):
            raise AudioError(f"absorption must be in (0, 1], got {self.absorption}")
        if self.mic_distance <= 0:
            raise AudioError("mic distance must be positive")
        for pos, size, axis in (
            (self.source_x, self.size_x, "x"),
            (self.source_y, self.size_y, "y"),
            (self.source_z, self.size_z, "z"),
        ):
            if not (0 < pos < size):
                raise AudioError(f"source {axis}={pos} outside room (0, {size})")
        mic = self.mic_position()
        for pos, size, axis in zip(mic, (self.size_x, self.size_y, self.size_z), "xyz"):
            if not (0 < pos < size):
                raise AudioError(f"mic {axis}={pos:.3f} outside room (0, {size})")

    def mic_position(self) -> tuple[float, float, float]:
        az = math.radians(self.mic_azimuth_deg)
        el = math.radians(self.mic_elevation_deg)
        return (
            self.source_x + self.mic_distance * math.cos(el) * math.cos(az),
            self.source_y + self.mic_distance * math.cos(el) * math.sin(az),
            self.source_z + self.mic_distance * math.sin(el),
        )


def axis_images(source: float, size: float, max_order: int) -> list[tuple[float, int]]:
    """1-D image positions with reflection counts: 2nL + s carries 2|n|
    reflections, 2nL - s carries |2n - 1|."""
    out = []
    n_max = max_order // 2 + 1
    for n in range(-n_max, n_max + 1):
        for sign in (+1, -1):
            order = abs(2 * n) if sign > 0 else abs(2 * n - 1)
            if order <= max_order:
                out.append((2 * n * size + sign * source, order))
    return out


def image_source_rir(
    spec: RoomSpec, sample_rate: int, max_order: int = DEFAULT_MAX_ORDER
) -> Waveform:
    """Synthesize the room impulse response at the mic position."""
    if max_order < 0:
        raise AudioError("max_order must be >= 0")
    mic = spec.mic_position()
    beta = 1.0 - spec.absorption

    xs = axis_images(spec.source_x, spec.size_x, max_order)
    ys = axis_images(spec.source_y, spec.size_y, max_order)
    zs = axis_images(spec.source_z, spec.size_z, max_order)

    taps: list[tuple[int, float]] = []
    for px, ox in xs:
        for py, oy in ys:
            if ox + oy > max_order:
                continue
            for pz, oz in zs:
                order = ox + oy + oz
                if order > max_order:
                    continue
                dist = math.dist((px, py, pz), mic)
                if dist < 1e-9:
                    raise AudioError("mic coincides with an image source")
                amplitude = (beta ** order) / dist
                delay = int(math.floor(dist / SPEED_OF_SOUND * sample_rate + 0.5))
                taps.append((delay, amplitude))

    length = max(delay for delay, _ in taps) + 1
    ir = np.zeros(length)
    for delay, amplitude in taps:
        ir[delay] += amplitude
    return Waveform(ir, sample_rate)


def simulate_room(
    wav: Waveform,
    spec: RoomSpec,
    max_order: int = DEFAULT_MAX_ORDER,
) -> Waveform:
    ir = image_source_rir(spec, wav.sample_rate, max_order)
    return convolve_rir(wav, ir)


# parameter order is part of the determinism contract: a seeded generator
# resolves the min/max block into the same RoomSpec on every run
ROOM_PARAM_ORDER = (
    "size_x", "size_y", "size_z", "absorption_value",
    "source_x", "source_y", "source_z",
    "mic_distance", "mic_azimuth", "mic_elevation",
)


def room_spec_from_ranges(ranges: dict[str, tuple[float, float]], rng: np.random.Generator) -> RoomSpec:
    """Resolve a ROOM_SIMULATE-style min/max block into a concrete RoomSpec."""
    drawn = {}
    for name in ROOM_PARAM_ORDER:
        lo, hi = ranges[name]
        drawn[name] = sample_range(lo, hi, rng)
    return RoomSpec(
        size_x=drawn["size_x"],
        size_y=drawn["size_y"],
        size_z=drawn["size_z"],
        absorption=drawn["absorption_value"],
        source_x=drawn["source_x"],
        source_y=drawn["source_y"],
        source_z=drawn["source_z"],
        mic_distance=drawn["mic_distance"],
        mic_azimuth_deg=drawn["mic_azimuth"],
        mic_elevation_deg=drawn["mic_elevation"],
    )
