"""Deterministic procedural stand-ins for the generative models.

Every stub is a pure function of (request, seed): audio is synthesized from
seeded noise and text-hash-derived frequency bands, so the whole system runs
offline and reproducibly. Separation is an idempotent spectral projection;
the background is the bit-exact float complement input - foreground, so the
pair reconstructs the input to within one ulp per sample.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

from ..audio import (
    BELOW_GATE,
    SR_OUTPUT_RATE,
    WORKING_RATE,
    Waveform,
    measure_lufs,
    resample,
    seconds_to_samples,
)
from ..errors import BackendError
from ..lang.signatures import SPEAKERS
from .protocol import GenerativeRequest, GenerativeResponse

CROSSFADE_SECONDS = 0.010

_SPEAKER_PITCH_HZ = {
    "Male1_En": 110.0,
    "Male2_En": 130.0,
    "Female1_En": 210.0,
    "Female2_En": 240.0,
}


def _hash64(text: str) -> int:
    return int.from_bytes(hashlib.md5(text.encode("utf-8")).digest()[:8], "little")


def text_band(text: str, sample_rate: int) -> tuple[float, float]:
    """Deterministic frequency band for a text query."""
    h = _hash64(text)
    nyquist = sample_rate / 2
    lo = 150.0 + (h % 10_000) / 10_000 * min(1650.0, 0.3 * nyquist)
    width = 400.0 + ((h >> 20) % 10_000) / 10_000 * 2400.0
    hi = min(lo + width, 0.92 * nyquist)
    return lo, hi


def band_project(samples: np.ndarray, sample_rate: int, lo: float, hi: float) -> np.ndarray:
    """Zero all spectral content outside [lo, hi]; linear and idempotent."""
    spectrum = np.fft.rfft(samples)
    freqs = np.fft.rfftfreq(len(samples), 1.0 / sample_rate)
    spectrum[(freqs < lo) | (freqs > hi)] = 0.0
    return np.fft.irfft(spectrum, n=len(samples))


def _rng(request: GenerativeRequest) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(request.seed))


def _require_text(request: GenerativeRequest) -> str:
    if not request.text:
        raise BackendError(f"{request.op} requires text", code="bad_request")
    return request.text


def _fade_envelope(n: int, fade: int) -> np.ndarray:
    env = np.ones(n)
    fade = min(fade, n // 2)
    if fade > 0:
        ramp = 0.5 - 0.5 * np.cos(np.pi * np.arange(fade) / fade)
        env[:fade] = ramp
        env[-fade:] = ramp[::-1]
    return env


def _textured_noise(text: str, n: int, rate: int, rng: np.random.Generator) -> np.ndarray:
    lo, hi = text_band(text, rate)
    shaped = band_project(rng.standard_normal(n), rate, lo, hi)
    rms = float(np.sqrt(np.mean(np.square(shaped)))) or 1.0
    return shaped * (0.1 / rms) * _fade_envelope(n, seconds_to_samples(0.02, rate))


def stub_tta(request: GenerativeRequest) -> GenerativeResponse:
    text = _require_text(request)
    rate = int(request.param("sample_rate", WORKING_RATE))
    n = seconds_to_samples(float(request.param("length", 5.0)), rate)
    if n <= 0:
        raise BackendError("TTA length must be positive", code="bad_request")
    return GenerativeResponse((Waveform(_textured_noise(text, n, rate, _rng(request)), rate),))


def stub_tts(request: GenerativeRequest) -> GenerativeResponse:
    text = _require_text(request)
    speaker = str(request.param("speaker", SPEAKERS[0]))
    if speaker not in _SPEAKER_PITCH_HZ:
        raise BackendError(
            f"speaker must be one of {SPEAKERS}, got {speaker!r}", code="bad_request"
        )
    rate = int(request.param("sample_rate", WORKING_RATE))
    words = text.split()
    if not words:
        raise BackendError("TTS requires non-empty text", code="bad_request")
    burst_n = seconds_to_samples(0.32, rate)
    gap_n = seconds_to_samples(0.12, rate)
    base_pitch = _SPEAKER_PITCH_HZ[speaker]
    pieces = []
    for word in words:
        semitones = (_hash64(word) % 9) - 4
        f0 = base_pitch * 2.0 ** (semitones / 12.0)
        t = np.arange(burst_n) / rate
        burst = np.zeros(burst_n)
        for k in range(1, 5):
            burst += (0.5 ** (k - 1)) * np.sin(2 * np.pi * k * f0 * t)
        burst *= 0.25 * _fade_envelope(burst_n, seconds_to_samples(0.03, rate))
        pieces.append(burst)
        pieces.append(np.zeros(gap_n))
    return GenerativeResponse((Waveform(np.concatenate(pieces), rate),))


_PENTATONIC_RATIOS = (1.0, 9 / 8, 5 / 4, 3 / 2, 5 / 3)


def _melody_track(melody: Waveform, n_frames: int, frame_s: float) -> list[float]:
    """Dominant frequency per frame; the last value holds past the melody end."""
    hop = seconds_to_samples(frame_s, melody.sample_rate)
    track = []
    for i in range(n_frames):
        start = i * hop
        frame = melody.samples[start:start + hop]
        if frame.size < 16:
            track.append(track[-1] if track else 220.0)
            continue
        mags = np.abs(np.fft.rfft(frame))
        freqs = np.fft.rfftfreq(frame.size, 1.0 / melody.sample_rate)
        usable = (freqs >= 80.0) & (freqs <= 2000.0)
        if not usable.any() or float(mags[usable].max()) <= 0.0:
            track.append(track[-1] if track else 220.0)
        else:
            idx = np.argmax(np.where(usable, mags, -1.0))
            track.append(float(freqs[idx]))
    return track


def stub_ttm(request: GenerativeRequest) -> GenerativeResponse:
    text = _require_text(request)
    rate = int(request.param("sample_rate", WORKING_RATE))
    n = seconds_to_samples(float(request.param("length", 10.0)), rate)
    if n <= 0:
        raise BackendError("TTM length must be positive", code="bad_request")
    rng = _rng(request)
    frame_s = 0.25
    hop = seconds_to_samples(frame_s, rate)
    n_frames = max(1, math.ceil(n / hop))
    if request.inputs:
        fundamentals = _melody_track(request.inputs[0], n_frames, frame_s)
    else:
        base = 165.0 * 2.0 ** ((_hash64(text) % 12) / 12.0)
        fundamentals = [
            base * _PENTATONIC_RATIOS[int(rng.integers(len(_PENTATONIC_RATIOS)))]
            for _ in range(n_frames)
        ]
    f_per_sample = np.repeat(fundamentals, hop)[:n]
    phase = 2 * np.pi * np.cumsum(f_per_sample) / rate
    out = np.sin(phase) + 0.4 * np.sin(2 * phase) + 0.2 * np.sin(3 * phase)
    out *= 0.2 * _fade_envelope(n, seconds_to_samples(0.02, rate))
    return GenerativeResponse((Waveform(out, rate),))


def stub_sr(request: GenerativeRequest) -> GenerativeResponse:
    if not request.inputs:
        raise BackendError("SR requires one input waveform", code="bad_request")
    wav = request.inputs[0]
    upsampled = resample(wav, SR_OUTPUT_RATE)
    original_nyquist = wav.sample_rate / 2
    rng = _rng(request)
    noise = band_project(
        rng.standard_normal(len(upsampled)),
        SR_OUTPUT_RATE,
        original_nyquist * 1.05,
        0.96 * SR_OUTPUT_RATE / 2,
    )
    noise_rms = float(np.sqrt(np.mean(np.square(noise)))) or 1.0
    level = wav.rms() * 0.01  # synthetic high band at -40 dB relative
    out = upsampled.samples + noise * (level / noise_rms)
    return GenerativeResponse((Waveform(out, SR_OUTPUT_RATE),))


def stub_inpaint(request: GenerativeRequest) -> GenerativeResponse:
    text = _require_text(request)
    if not request.inputs:
        raise BackendError("INPAINT requires one input waveform", code="bad_request")
    wav = request.inputs[0]
    rate = wav.sample_rate
    onset = float(request.param("onset", 0.0))
    offset = float(request.param("offset", 0.0))
    duration = wav.duration_seconds
    if not (0.0 <= onset < offset <= duration):
        raise BackendError(
            f"INPAINT region [{onset}, {offset}] outside input of {duration:.3f} s",
            code="bad_request",
        )
    a = seconds_to_samples(onset, rate)
    b = seconds_to_samples(offset, rate)
    cf = seconds_to_samples(CROSSFADE_SECONDS, rate)
    left = max(0, a - cf)
    right = min(len(wav), b + cf)

    gen = _textured_noise(text, right - left, rate, _rng(request))
    context_rms = wav.rms()
    if context_rms > 0:
        gen_rms = float(np.sqrt(np.mean(np.square(gen)))) or 1.0
        gen = gen * (context_rms / gen_rms)

    out = wav.samples.copy()
    out[left:right] = gen
    if a > left:  # equal-power fade from input into generated audio
        theta = np.linspace(0.0, np.pi / 2, a - left, endpoint=False)
        out[left:a] = wav.samples[left:a] * np.cos(theta) + gen[: a - left] * np.sin(theta)
    if right > b:  # and back out
        theta = np.linspace(0.0, np.pi / 2, right - b, endpoint=False)
        out[b:right] = gen[b - left:] * np.cos(theta) + wav.samples[b:right] * np.sin(theta)
    return GenerativeResponse((Waveform(out, rate),))


def stub_separate(request: GenerativeRequest) -> GenerativeResponse:
    """Foreground = text-band spectral projection; background = the exact
    float complement input - foreground."""
    text = _require_text(request)
    if not request.inputs:
        raise BackendError("TSS requires one input waveform", code="bad_request")
    wav = request.inputs[0]
    lo, hi = text_band(text, wav.sample_rate)
    fg = band_project(wav.samples, wav.sample_rate, lo, hi)
    bg = wav.samples - fg
    return GenerativeResponse((Waveform(fg, wav.sample_rate), Waveform(bg, wav.sample_rate)))


def caption_text(wav: Waveform) -> str:
    duration = wav.duration_seconds
    if wav.peak < 1e-6:
        return f"a {duration:.1f} second silence"
    loud = None
    if duration >= 0.4:
        lufs = measure_lufs(wav)
        if lufs == BELOW_GATE:
            return f"a {duration:.1f} second silence"
        loud = lufs
    else:
        loud = 20.0 * math.log10(max(wav.rms(), 1e-12))
    if loud > -18.0:
        adjective = "loud"
    elif loud > -35.0:
        adjective = "moderate"
    else:
        adjective = "quiet"
    mags = np.abs(np.fft.rfft(wav.samples))
    freqs = np.fft.rfftfreq(len(wav), 1.0 / wav.sample_rate)
    dominant = float(freqs[int(np.argmax(mags))])
    if dominant < 300.0:
        band = "low-frequency"
    elif dominant < 2000.0:
        band = "mid-frequency"
    else:
        band = "high-frequency"
    return f"a {duration:.1f} second {adjective} {band} sound"


def stub_caption(request: GenerativeRequest) -> GenerativeResponse:
    if not request.inputs:
        raise BackendError("CAPTION requires one input waveform", code="bad_request")
    return GenerativeResponse((), {"caption": caption_text(request.inputs[0])})


STUB_HANDLERS = {
    "TTA": stub_tta,
    "TTS": stub_tts,
    "TTM": stub_ttm,
    "SR": stub_sr,
    "INPAINT": stub_inpaint,
    "TSS": stub_separate,
    "CAPTION": stub_caption,
}


def run_stub(request: GenerativeRequest) -> GenerativeResponse:
    handler = STUB_HANDLERS.get(request.op)
    if handler is None:
        raise BackendError(f"no stub for operation {request.op!r}", code="unknown_op")
    return handler(request)
