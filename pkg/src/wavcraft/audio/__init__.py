"""Native DSP: waveform type, editing ops, loudness, room acoustics, metrics."""

from .waveform import (
    EXPORT_PEAK_CEILING,
    SR_OUTPUT_RATE,
    WORKING_RATE,
    Waveform,
    peak_limit,
    seconds_to_samples,
    silence,
)
from .ops import (
    add_noise_snr,
    adjust_gain_db,
    clip,
    concat,
    convolve_rir,
    length_seconds,
    mix,
    sample_range,
    split,
)
from .filters import FilterParams, biquad_filter, butterworth_magnitude, resample, snap_rolloff
from .loudness import BELOW_GATE, measure_lufs, normalize_lufs
from .metrics import lsd
from .room import (
    DEFAULT_MAX_ORDER,
    SPEED_OF_SOUND,
    RoomSpec,
    image_source_rir,
    room_spec_from_ranges,
    simulate_room,
)
from .wavio import read_wav, write_wav

__all__ = [
    "BELOW_GATE",
    "DEFAULT_MAX_ORDER",
    "EXPORT_PEAK_CEILING",
    "FilterParams",
    "RoomSpec",
    "SPEED_OF_SOUND",
    "SR_OUTPUT_RATE",
    "WORKING_RATE",
    "Waveform",
    "add_noise_snr",
    "adjust_gain_db",
    "biquad_filter",
    "butterworth_magnitude",
    "clip",
    "concat",
    "convolve_rir",
    "image_source_rir",
    "length_seconds",
    "lsd",
    "measure_lufs",
    "mix",
    "normalize_lufs",
    "peak_limit",
    "read_wav",
    "resample",
    "room_spec_from_ranges",
    "sample_range",
    "seconds_to_samples",
    "silence",
    "simulate_room",
    "snap_rolloff",
    "split",
    "write_wav",
]
