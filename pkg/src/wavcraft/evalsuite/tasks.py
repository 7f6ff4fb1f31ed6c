"""Editing-task synthesis and the canonical programs that solve them.

Ground truths are built with the same primitive operations the engine uses,
so a correct run in stub mode reproduces them to float precision:

  add          inputs {A, B};        GT = mix(A, B) at onset 0
  removal      inputs {M = A+B, A};  GT = M - A (exact), A in-band by construction
  replacement  inputs {M = B+C, B, A}; GT = (M - B) + A in B's slot
  super_resolution  input = GT downsampled to 8 kHz; GT = the 16 kHz original
  infilling    input = GT with [onset, offset] zeroed; GT = the original

Removal and replacement lean on the separation stub being an exact spectral
projection: the extracted track is built by applying that projection up
front, and its complement never contains in-band energy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..audio import Waveform, mix, resample, seconds_to_samples
from ..backends.stubs import CROSSFADE_SECONDS, band_project, text_band
from ..errors import ConfigError
from ..lang import Program, parse
from ..lang.formatter import format_string
from .pool import SourceClip

TASK_KINDS = ("add", "removal", "replacement", "super_resolution", "infilling")

LOW_RES_RATE = 8_000


@dataclass
class EditingTask:
    task_id: str
    kind: str
    inputs: dict[str, Waveform]  # INPUT_WAVn, in signature order
    instruction: str
    ground_truth: Waveform
    metadata: dict[str, Any] = field(default_factory=dict)


def _pick(pool: list[SourceClip], rng: np.random.Generator, exclude: set[int]) -> tuple[int, SourceClip]:
    candidates = [i for i in range(len(pool)) if i not in exclude]
    if not candidates:
        raise ConfigError("source pool exhausted")
    index = int(candidates[rng.integers(len(candidates))])
    return index, pool[index]


def _project(wav: Waveform, caption: str) -> Waveform:
    lo, hi = text_band(caption, wav.sample_rate)
    return Waveform(band_project(wav.samples, wav.sample_rate, lo, hi), wav.sample_rate)


def _complement(wav: Waveform, caption: str) -> Waveform:
    return Waveform(wav.samples - _project(wav, caption).samples, wav.sample_rate)


def synthesize_task(
    kind: str,
    pool: list[SourceClip],
    rng: np.random.Generator,
    task_id: str = "",
) -> EditingTask:
    if kind not in TASK_KINDS:
        raise ConfigError(f"unknown task kind {kind!r}")
    if len(pool) < 3:
        raise ConfigError("source pool too small")

    if kind == "add":
        ia, a = _pick(pool, rng, set())
        _, b = _pick(pool, rng, {ia})
        ground_truth = mix([(a.wav, 0.0), (b.wav, 0.0)])
        return EditingTask(
            task_id=task_id,
            kind=kind,
            inputs={"INPUT_WAV0": a.wav, "INPUT_WAV1": b.wav},
            instruction=f"Add {a.caption} in the background of {b.caption}",
            ground_truth=ground_truth,
            metadata={"C_A": a.caption, "C_B": b.caption},
        )

    if kind == "removal":
        ia, a = _pick(pool, rng, set())
        _, b = _pick(pool, rng, {ia})
        track = _project(a.wav, a.caption)       # exactly in-band for C_A
        backdrop = _complement(b.wav, a.caption)  # no energy in C_A's band
        mixture = mix([(track, 0.0), (backdrop, 0.0)])
        ground_truth = Waveform(mixture.samples - track.samples, mixture.sample_rate)
        caption_m = f"{a.caption} mixed with {b.caption}"
        return EditingTask(
            task_id=task_id,
            kind=kind,
            inputs={"INPUT_WAV0": mixture, "INPUT_WAV1": track},
            instruction=f"Remove {a.caption} from {caption_m}",
            ground_truth=ground_truth,
            metadata={"C_A": a.caption, "C_B": b.caption, "C_M": caption_m},
        )

    if kind == "replacement":
        ib, b = _pick(pool, rng, set())
        ic, c = _pick(pool, rng, {ib})
        _, a = _pick(pool, rng, {ib, ic})
        old_track = _project(b.wav, b.caption)
        backdrop = _complement(c.wav, b.caption)
        mixture = mix([(old_track, 0.0), (backdrop, 0.0)])
        remainder = Waveform(mixture.samples - old_track.samples, mixture.sample_rate)
        ground_truth = mix([(remainder, 0.0), (a.wav, 0.0)])
        return EditingTask(
            task_id=task_id,
            kind=kind,
            inputs={"INPUT_WAV0": mixture, "INPUT_WAV1": old_track, "INPUT_WAV2": a.wav},
            instruction=f"Replace {b.caption} with {a.caption}",
            ground_truth=ground_truth,
            metadata={
                "C_A": a.caption,
                "C_B": b.caption,
                "C_M": f"{b.caption} mixed with {c.caption}",
                "slot_onset": 0.0,
            },
        )

    if kind == "super_resolution":
        _, a = _pick(pool, rng, set())
        return EditingTask(
            task_id=task_id,
            kind=kind,
            inputs={"INPUT_WAV0": resample(a.wav, LOW_RES_RATE)},
            instruction=f"Increase resolution of {a.caption}",
            ground_truth=a.wav,
            metadata={"C_A": a.caption, "input_rate": LOW_RES_RATE},
        )

    # infilling
    _, a = _pick(pool, rng, set())
    duration = a.wav.duration_seconds
    onset = round(float(rng.uniform(1.0, duration / 2)), 3)
    offset = round(float(onset + rng.uniform(0.8, min(1.6, duration - onset - 1.0))), 3)
    start = seconds_to_samples(onset, a.wav.sample_rate)
    stop = seconds_to_samples(offset, a.wav.sample_rate)
    masked = a.wav.samples.copy()
    masked[start:stop] = 0.0
    return EditingTask(
        task_id=task_id,
        kind=kind,
        inputs={"INPUT_WAV0": Waveform(masked, a.wav.sample_rate)},
        instruction=f"Inpaint {a.caption}",
        ground_truth=a.wav,
        metadata={"C_A": a.caption, "onset": onset, "offset": offset},
    )


def golden_script(task: EditingTask) -> Program:
    """Canonical program solving the task, for LLM-free engine runs."""
    if task.kind == "add":
        text = (
            f"# Mix {task.metadata['C_A']} with {task.metadata['C_B']}\n"
            "OUTPUT_WAV = MIX([(INPUT_WAV0, 0), (INPUT_WAV1, 0)])"
        )
    elif task.kind == "removal":
        target = format_string(task.metadata["C_A"])
        text = (
            f"# Drop {task.metadata['C_A']} from the mixture\n"
            f"_, OUTPUT_WAV = TSS(INPUT_WAV0, text={target})"
        )
    elif task.kind == "replacement":
        target = format_string(task.metadata["C_B"])
        text = (
            f"# Drop {task.metadata['C_B']} from the mixture\n"
            f"_, WAV0 = TSS(INPUT_WAV0, text={target})\n"
            f"# Put {task.metadata['C_A']} in the vacated slot\n"
            "OUTPUT_WAV = MIX([(WAV0, 0), (INPUT_WAV2, 0)])"
        )
    elif task.kind == "super_resolution":
        text = (
            "# Upsample the recording\n"
            "OUTPUT_WAV = SR(INPUT_WAV0)"
        )
    elif task.kind == "infilling":
        target = format_string(task.metadata["C_A"])
        onset = task.metadata["onset"]
        offset = task.metadata["offset"]
        text = (
            f"# Regenerate the masked region\n"
            f"OUTPUT_WAV = INPAINT(INPUT_WAV0, text={target}, onset={onset}, "
            f"offset={offset}, duration=LEN(INPUT_WAV0))"
        )
    else:
        raise ConfigError(f"unknown task kind {task.kind!r}")
    return parse(text)


def unmasked_region_bounds(task: EditingTask) -> tuple[int, int]:
    """Sample range [start, stop) that the inpaint path may touch, crossfade
    margins included."""
    rate = task.ground_truth.sample_rate
    margin = seconds_to_samples(CROSSFADE_SECONDS, rate)
    start = seconds_to_samples(task.metadata["onset"], rate) - margin
    stop = seconds_to_samples(task.metadata["offset"], rate) + margin
    return max(0, start), min(len(task.ground_truth), stop)
