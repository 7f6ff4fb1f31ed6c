"""Log spectral distance and the RIFF/WAVE codec."""

from __future__ import annotations

import struct

import numpy as np
import pytest

from helpers import make_noise, make_tone
from wavcraft.audio import Waveform, lsd, read_wav, resample, write_wav
from wavcraft.errors import AudioError, WavFormatError

RATE = 16_000


def test_lsd_identity_is_zero():
    x = make_noise(3.0, seed=40)
    assert lsd(x, x) == 0.0


def test_lsd_factor_ten_is_exactly_one():
    x = make_noise(3.0, rms=0.1, seed=41)
    scaled = Waveform(10.0 * x.samples, RATE)
    assert lsd(x, scaled) == pytest.approx(1.0, abs=1e-6)


def test_lsd_symmetry_and_length_padding():
    a = make_noise(2.0, seed=42)
    b = make_noise(1.4, seed=43)
    assert lsd(a, b) == lsd(b, a)


def test_lsd_band_limited_variant():
    a = make_tone(1000.0, 2.0, amplitude=0.4)
    b = Waveform(a.samples + make_tone(6000.0, 2.0, amplitude=0.4).samples, RATE)
    full = lsd(a, b)
    low_band = lsd(a, b, max_freq_hz=4000.0)
    assert low_band < full


def test_lsd_errors():
    x = make_noise(1.0, seed=44)
    with pytest.raises(AudioError):
        lsd(x, Waveform(np.array([]), RATE))
    with pytest.raises(AudioError):
        lsd(x, make_noise(1.0, rate=8000))


# -- wav io ------------------------------------------------------------------


def test_float32_round_trip_max_error():
    x = make_noise(2.0, rms=0.25, seed=45)
    back = read_wav(write_wav(x))
    assert back.sample_rate == x.sample_rate
    assert len(back) == len(x)
    assert np.max(np.abs(back.samples - x.samples)) < 1e-7


def _pcm_wav(samples_by_channel: np.ndarray, rate: int, bits: int) -> bytes:
    channels = samples_by_channel.shape[1]
    if bits == 16:
        ints = (samples_by_channel * 32767).astype("<i2")
        payload = ints.tobytes()
    elif bits == 32:
        ints = (samples_by_channel * 2147483647).astype("<i4")
        payload = ints.tobytes()
    elif bits == 24:
        ints = (samples_by_channel * ((1 << 23) - 1)).astype("<i4")
        raw = ints.astype("<i4").tobytes()
        payload = b"".join(raw[i:i + 3] for i in range(0, len(raw), 4))
    else:
        raise ValueError(bits)
    block = channels * bits // 8
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE", b"fmt ", 16, 1, channels,
        rate, rate * block, block, bits, b"data", len(payload),
    )
    return header + payload


@pytest.mark.parametrize("bits", [16, 24, 32])
def test_pcm_decode(bits):
    t = np.arange(RATE) / RATE
    mono = (0.5 * np.sin(2 * np.pi * 440 * t)).reshape(-1, 1)
    wav = read_wav(_pcm_wav(mono, RATE, bits))
    assert len(wav) == RATE
    assert wav.peak == pytest.approx(0.5, abs=1e-3)


def test_stereo_pcm16_downmixes_to_mono():
    t = np.arange(RATE) / RATE
    left = 0.5 * np.sin(2 * np.pi * 440 * t)
    right = np.zeros_like(left)
    stereo = np.stack([left, right], axis=1)
    wav = read_wav(_pcm_wav(stereo, RATE, 16))
    assert len(wav) == RATE
    assert wav.peak == pytest.approx(0.25, abs=1e-3)


def test_read_resamples_on_ingest():
    tone = make_tone(1000.0, 1.0, rate=44_100, amplitude=0.4)
    wav = read_wav(write_wav(tone), target_rate=RATE)
    assert wav.sample_rate == RATE
    assert abs(wav.duration_seconds - 1.0) < 1e-3


def test_truncated_and_malformed_headers():
    with pytest.raises(WavFormatError):
        read_wav(b"RIFF\x00\x00\x00\x00WAV")
    with pytest.raises(WavFormatError):
        read_wav(b"not audio at all")
    # valid RIFF shell but no chunks
    shell = struct.pack("<4sI4s", b"RIFF", 4, b"WAVE")
    with pytest.raises(WavFormatError):
        read_wav(shell)


def test_unsupported_codec_rejected():
    payload = b"\x00" * 64
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE", b"fmt ", 16, 7, 1,  # mu-law
        RATE, RATE, 1, 8, b"data", len(payload),
    )
    with pytest.raises(WavFormatError):
        read_wav(header + payload)


def test_write_emits_riff_float32():
    data = write_wav(make_noise(0.1, seed=46))
    assert data[:4] == b"RIFF" and data[8:12] == b"WAVE"
    fmt_tag = struct.unpack_from("<H", data, 20)[0]
    assert fmt_tag == 3  # IEEE float
