"""Editing primitives: mixing, slicing, gain, and their algebraic laws."""

from __future__ import annotations

import numpy as np
import pytest

from helpers import make_noise, make_tone
from wavcraft.audio import (
    Waveform,
    adjust_gain_db,
    clip,
    concat,
    length_seconds,
    mix,
    split,
)
from wavcraft.errors import AudioError

RATE = 16_000


def test_mix_onset_and_duration():
    a = make_noise(5.0, seed=1)
    b = make_noise(4.0, seed=2)
    out = mix([(a, 0.0), (b, 3.0)])
    assert out.duration_seconds == pytest.approx(7.0)
    # [3 s, 5 s) is the overlap of both entries
    region = slice(3 * RATE, 5 * RATE)
    expected = a.samples[region] + b.samples[: 2 * RATE]
    assert np.array_equal(out.samples[region], expected)


def test_mix_identity():
    x = make_noise(2.0, seed=3)
    assert np.array_equal(mix([(x, 0.0)]).samples, x.samples)


def test_mix_impulses_at_exact_indices():
    impulse = Waveform(np.array([1.0]), RATE)
    out = mix([(impulse, 0.0), (impulse, 1.0)])
    assert np.nonzero(out.samples)[0].tolist() == [0, RATE]


def test_mix_linearity_and_permutation_invariance():
    a = make_noise(2.0, seed=4)
    b = make_noise(1.5, seed=5)
    ab = mix([(a, 0.0), (b, 0.0)])
    padded_b = np.concatenate([b.samples, np.zeros(len(a) - len(b))])
    assert np.array_equal(ab.samples, a.samples + padded_b)
    ba = mix([(b, 0.0), (a, 0.0)])
    assert np.array_equal(ab.samples, ba.samples)


def test_mix_errors():
    with pytest.raises(AudioError):
        mix([])
    with pytest.raises(AudioError):
        mix([(make_noise(1.0), 0.0), (make_noise(1.0, rate=8000), 0.0)])
    with pytest.raises(AudioError):
        mix([(make_noise(1.0), -0.5)])


def test_concat_lengths_and_identity():
    w = make_noise(1.0, seed=6)
    assert len(concat([w] * 5)) == 5 * len(w)
    assert np.array_equal(concat([w]).samples, w.samples)
    with pytest.raises(AudioError):
        concat([])


def test_split_example_durations():
    w = make_noise(10.0, seed=7)
    parts = split(w, [1.0, 5.0])
    assert [p.duration_seconds for p in parts] == [1.0, 4.0, 5.0]


def test_split_empty_breakpoints():
    w = make_noise(1.0, seed=8)
    (only,) = split(w, [])
    assert np.array_equal(only.samples, w.samples)


def test_split_concat_partition_100_random_cases():
    rng = np.random.default_rng(99)
    w = make_noise(8.0, seed=9)
    for _ in range(100):
        k = int(rng.integers(0, 6))
        points = sorted(float(t) for t in rng.uniform(0.05, 7.95, size=k))
        if len(set(points)) != k:
            continue
        parts = split(w, points)
        assert sum(len(p) for p in parts) == len(w)
        assert np.array_equal(concat(parts).samples, w.samples)


def test_split_rejects_bad_breakpoints():
    w = make_noise(2.0, seed=10)
    for bad in ([1.5, 1.0], [0.0], [2.0], [-1.0]):
        with pytest.raises(AudioError):
            split(w, bad)


def test_clip_cases():
    w = make_noise(10.0, seed=11)
    assert np.array_equal(clip(w, 0.0, w.duration_seconds).samples, w.samples)
    assert clip(w, 2.0, 5.0).duration_seconds == pytest.approx(3.0)
    with pytest.raises(AudioError):
        clip(w, 5.0, 2.0)
    with pytest.raises(AudioError):
        clip(w, 0.0, 11.0)


def test_length_seconds():
    assert length_seconds(Waveform(np.zeros(16000), RATE)) == 1.0
    assert length_seconds(Waveform(np.zeros(24000), RATE)) == 1.5


def test_adjust_gain_db_frozen_factors():
    w = make_tone(440, 1.0, amplitude=0.1)
    assert np.array_equal(adjust_gain_db(w, 0.0).samples, w.samples)
    # 10^(5/20) and 10^(-3/20), computed analytically
    assert adjust_gain_db(w, 5.0).peak == pytest.approx(0.1 * 1.7782794100389228, rel=1e-12)
    assert adjust_gain_db(w, -3.0).peak == pytest.approx(0.1 * 0.7079457843841379, rel=1e-12)


def test_gain_composition_law():
    w = make_noise(1.0, seed=12)
    lhs = adjust_gain_db(adjust_gain_db(w, 3.3), -1.1)
    rhs = adjust_gain_db(w, 2.2)
    assert np.max(np.abs(lhs.samples - rhs.samples)) < 1e-6


def test_no_nan_inf_construction():
    with pytest.raises(AudioError):
        Waveform(np.array([0.0, np.nan]), RATE)
    with pytest.raises(AudioError):
        Waveform(np.array([np.inf]), RATE)
    with pytest.raises(AudioError):
        Waveform(np.zeros(4), 0)


def test_waveform_immutable():
    w = make_noise(0.5, seed=13)
    with pytest.raises(ValueError):
        w.samples[0] = 1.0
