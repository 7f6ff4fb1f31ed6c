"""RIFF/WAVE reading and writing.

Reads PCM-16/24/32 and float-32, downmixing multichannel to mono by
averaging; optionally resamples to a working rate on ingest. Writes
float-32 mono at the waveform's own rate.
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import WavFormatError
from .filters import resample
from .waveform import Waveform

_FORMAT_PCM = 1
_FORMAT_FLOAT = 3
_FORMAT_EXTENSIBLE = 0xFFFE


def read_wav(data: bytes, target_rate: int | None = None) -> Waveform:
    """Decode WAV bytes to a mono waveform.

    When `target_rate` is given the result is resampled to it (ingest path);
    otherwise the file's native rate is kept.
    """
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise WavFormatError("not a RIFF/WAVE file")
    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos:pos + 4]
        (chunk_size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8:pos + 8 + chunk_size]
        if chunk_id == b"fmt ":
            if len(body) < 16:
                raise WavFormatError("truncated fmt chunk")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
            if fmt[0] == _FORMAT_EXTENSIBLE:
                if len(body) < 40:
                    raise WavFormatError("truncated WAVE_FORMAT_EXTENSIBLE chunk")
                sub_format = struct.unpack_from("<H", body, 24)[0]
                fmt = (sub_format,) + fmt[1:]
        elif chunk_id == b"data":
            if len(body) < chunk_size:
                raise WavFormatError("data chunk shorter than declared")
            payload = body
        pos += 8 + chunk_size + (chunk_size & 1)
    if fmt is None or payload is None:
        raise WavFormatError("missing fmt or data chunk")

    format_tag, channels, rate, _, _, bits = fmt
    if channels < 1:
        raise WavFormatError("channel count must be >= 1")
    if format_tag == _FORMAT_FLOAT and bits == 32:
        samples = np.frombuffer(payload, dtype="<f4").astype(np.float64)
    elif format_tag == _FORMAT_PCM and bits == 16:
        samples = np.frombuffer(payload, dtype="<i2").astype(np.float64) / 32768.0
    elif format_tag == _FORMAT_PCM and bits == 32:
        samples = np.frombuffer(payload, dtype="<i4").astype(np.float64) / 2147483648.0
    elif format_tag == _FORMAT_PCM and bits == 24:
        raw = np.frombuffer(payload[: len(payload) - len(payload) % 3], dtype=np.uint8)
        raw = raw.reshape(-1, 3)
        ints = (
            raw[:, 0].astype(np.int32)
            | (raw[:, 1].astype(np.int32) << 8)
            | (raw[:, 2].astype(np.int32) << 16)
        )
        ints = np.where(ints >= 1 << 23, ints - (1 << 24), ints)
        samples = ints.astype(np.float64) / float(1 << 23)
    else:
        raise WavFormatError(f"unsupported codec: format_tag={format_tag}, bits={bits}")

    frames = len(samples) // channels
    samples = samples[: frames * channels]
    if channels > 1:
        samples = samples.reshape(-1, channels).mean(axis=1)
    wav = Waveform(samples, rate)
    if target_rate is not None and target_rate != rate:
        wav = resample(wav, target_rate)
    return wav


def write_wav(wav: Waveform) -> bytes:
    """Encode as mono float-32 RIFF/WAVE at the waveform's rate."""
    payload = wav.samples.astype("<f4").tobytes()
    rate = wav.sample_rate
    block_align = 4
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(payload),
        b"WAVE",
        b"fmt ",
        16,
        _FORMAT_FLOAT,
        1,
        rate,
        rate * block_align,
        block_align,
        32,
        b"data",
        len(payload),
    )
    return header + payload
