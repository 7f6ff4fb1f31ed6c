"""Task synthesis laws, golden scripts, suite scoring and reproducibility."""

from __future__ import annotations

import numpy as np
import pytest

from wavcraft.errors import ConfigError
from wavcraft.evalsuite import (
    TASK_KINDS,
    golden_script,
    report_to_csv,
    report_to_json,
    run_suite,
    synthesize_task,
    synthetic_pool,
    unmasked_region_bounds,
)
from wavcraft.lang import free_input_names, validate


@pytest.fixture(scope="module")
def pool():
    return synthetic_pool(20, seed=0)


def _tasks(pool, kinds=TASK_KINDS, per_kind=3, seed=5):
    rng = np.random.default_rng(seed)
    return [
        synthesize_task(kind, pool, rng, task_id=f"{kind}-{i:03d}")
        for kind in kinds
        for i in range(per_kind)
    ]


def test_pool_is_deterministic_and_band_limited(pool):
    again = synthetic_pool(20, seed=0)
    for a, b in zip(pool, again):
        assert a.caption == b.caption
        assert np.array_equal(a.wav.samples, b.wav.samples)
    # no content above 3.5 kHz beyond numerical dust
    for clip in pool[:5]:
        spectrum = np.abs(np.fft.rfft(clip.wav.samples))
        freqs = np.fft.rfftfreq(len(clip.wav), 1 / clip.wav.sample_rate)
        high = spectrum[freqs > 3500.0]
        assert float(np.max(high)) < 1e-6 * float(np.max(spectrum))


def test_removal_construction_law_exact(pool):
    rng = np.random.default_rng(1)
    task = synthesize_task("removal", pool, rng, task_id="removal-x")
    mixture = task.inputs["INPUT_WAV0"]
    track = task.inputs["INPUT_WAV1"]
    assert np.array_equal(mixture.samples - track.samples, task.ground_truth.samples)


def test_add_instruction_uses_caption_template(pool):
    rng = np.random.default_rng(2)
    task = synthesize_task("add", pool, rng, task_id="add-x")
    assert task.instruction == (
        f"Add {task.metadata['C_A']} in the background of {task.metadata['C_B']}"
    )


def test_infilling_mask_is_zero_and_only_difference(pool):
    rng = np.random.default_rng(3)
    task = synthesize_task("infilling", pool, rng, task_id="inf-x")
    masked = task.inputs["INPUT_WAV0"]
    gt = task.ground_truth
    rate = gt.sample_rate
    a = round(task.metadata["onset"] * rate)
    b = round(task.metadata["offset"] * rate)
    assert np.all(masked.samples[a:b] == 0)
    outside = np.concatenate([masked.samples[:a], masked.samples[b:]])
    outside_gt = np.concatenate([gt.samples[:a], gt.samples[b:]])
    assert np.array_equal(outside, outside_gt)


def test_super_resolution_input_is_8k(pool):
    rng = np.random.default_rng(4)
    task = synthesize_task("super_resolution", pool, rng, task_id="sr-x")
    assert task.inputs["INPUT_WAV0"].sample_rate == 8000
    assert task.ground_truth.sample_rate == 16000


def test_all_golden_scripts_validate(pool, table):
    for task in _tasks(pool):
        program = golden_script(task)
        names = free_input_names(program)
        validated = validate(program, table, set(task.inputs))
        assert names <= set(task.inputs)
        assert validated.program is program


def test_removal_golden_shape(pool):
    rng = np.random.default_rng(6)
    task = synthesize_task("removal", pool, rng, task_id="removal-y")
    program = golden_script(task)
    stmt = program.statements[-1]
    assert stmt.targets == ("_", "OUTPUT_WAV")
    assert stmt.value.op == "TSS"


def test_suite_bounds_on_small_run(pool):
    report = run_suite(_tasks(pool, per_kind=4, seed=9), mode="golden", suite_seed=11)
    assert report.failure_count() == 0
    assert report.mean_lsd("add") < 1e-6
    assert report.mean_lsd("removal") < 1e-6
    assert report.mean_lsd("replacement") < 1e-6
    assert report.mean_lsd("infilling") < 1e-6
    assert report.mean_lsd("super_resolution") < 0.1


def test_scripted_llm_mode_matches_golden_bounds(pool):
    tasks = _tasks(pool, kinds=("add", "removal"), per_kind=2, seed=10)
    report = run_suite(tasks, mode="scripted-llm", suite_seed=12)
    assert report.failure_count() == 0
    assert report.mean_lsd("add") < 1e-6


def test_report_serialization_reproducible(pool):
    tasks_a = _tasks(pool, per_kind=2, seed=13)
    tasks_b = _tasks(pool, per_kind=2, seed=13)
    report_a = run_suite(tasks_a, suite_seed=14)
    report_b = run_suite(tasks_b, suite_seed=14)
    assert report_to_json(report_a, deterministic=True) == report_to_json(report_b, deterministic=True)
    assert report_to_csv(report_a, deterministic=True) == report_to_csv(report_b, deterministic=True)
    csv_text = report_to_csv(report_a, deterministic=True)
    assert csv_text.splitlines()[0] == "kind,task_id,lsd,runtime_ms,status"


def test_failures_recorded_not_raised(pool):
    rng = np.random.default_rng(15)
    task = synthesize_task("infilling", pool, rng, task_id="broken-000")
    # sabotage: ground truth shorter than the input makes scoring fail
    task.ground_truth = synthesize_task("infilling", pool, rng, task_id="x").ground_truth
    task.metadata["offset"] = task.metadata["onset"] + 0.1
    report = run_suite([task], suite_seed=16)
    assert len(report.results) == 1  # the suite itself survived


def test_empty_task_list_rejected():
    with pytest.raises(ConfigError):
        run_suite([], suite_seed=0)


def test_unmasked_region_bounds_include_crossfade(pool):
    rng = np.random.default_rng(17)
    task = synthesize_task("infilling", pool, rng, task_id="inf-y")
    start, stop = unmasked_region_bounds(task)
    rate = task.ground_truth.sample_rate
    assert start == round(task.metadata["onset"] * rate) - rate // 100
    assert stop == round(task.metadata["offset"] * rate) + rate // 100
