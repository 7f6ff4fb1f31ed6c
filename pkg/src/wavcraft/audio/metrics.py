"""Log spectral distance between two waveforms.

STFT: 1024-sample Hann window, hop 512, magnitudes floored at 1e-8. The
score is the mean over frames of the RMS log10-magnitude difference across
bins. Inputs of different lengths are compared after zero-padding the
shorter one.
"""

from __future__ import annotations

import numpy as np

from ..errors import AudioError
from .waveform import Waveform

STFT_WINDOW = 1024
STFT_HOP = 512
MAGNITUDE_FLOOR = 1e-8


def _log_magnitudes(samples: np.ndarray, n_bins: int | None = None) -> np.ndarray:
    n = len(samples)
    if n < STFT_WINDOW:
        samples = np.concatenate([samples, np.zeros(STFT_WINDOW - n)])
        n = STFT_WINDOW
    n_frames = 1 + (n - STFT_WINDOW) // STFT_HOP
    window = np.hanning(STFT_WINDOW)
    starts = np.arange(n_frames) * STFT_HOP
    frames = np.stack([samples[s:s + STFT_WINDOW] * window for s in starts])
    mags = np.abs(np.fft.rfft(frames, axis=1))
    if n_bins is not None:
        mags = mags[:, :n_bins]
    return np.log10(np.maximum(mags, MAGNITUDE_FLOOR))


def lsd(a: Waveform, b: Waveform, max_freq_hz: float | None = None) -> float:
    """Frame-averaged RMS difference of log-magnitude spectra.

    `max_freq_hz` restricts the comparison to bins strictly below that
    frequency (used for band-limited evaluation).
    """
    if not len(a) or not len(b):
        raise AudioError("lsd: empty input")
    if a.sample_rate != b.sample_rate:
        raise AudioError(f"lsd: sample rates differ ({a.sample_rate} vs {b.sample_rate})")
    n = max(len(a), len(b))
    xa = np.concatenate([a.samples, np.zeros(n - len(a))])
    xb = np.concatenate([b.samples, np.zeros(n - len(b))])
    n_bins = None
    if max_freq_hz is not None:
        freqs = np.fft.rfftfreq(STFT_WINDOW, 1.0 / a.sample_rate)
        n_bins = int(np.searchsorted(freqs, max_freq_hz))
        if n_bins == 0:
            raise AudioError(f"lsd: no bins below {max_freq_hz} Hz")
    la = _log_magnitudes(xa, n_bins)
    lb = _log_magnitudes(xb, n_bins)
    per_frame = np.sqrt(np.mean(np.square(la - lb), axis=1))
    return float(np.mean(per_frame))
