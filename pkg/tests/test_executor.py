"""Program execution: fixtures, determinism, seeds, limits, traces."""

from __future__ import annotations

import time

import numpy as np
import pytest

from helpers import rich_clip
from wavcraft.agent.fewshot import FEW_SHOT_EXAMPLES
from wavcraft.engine import ResourceLimits, SeedPolicy, execute
from wavcraft.engine.executor import _Context, eval_value
from wavcraft.errors import ExecutionError, LimitExceeded
from wavcraft.lang import parse, validate


def _validated(source: str, inputs: set[str], table):
    return validate(parse(source), table, inputs)


def _inputs(names, seconds=10.0):
    return {name: rich_clip(seconds, seed=17 + i) for i, name in enumerate(sorted(names))}


@pytest.mark.parametrize("example", FEW_SHOT_EXAMPLES, ids=lambda e: e.instruction[:24])
def test_fixture_programs_execute_and_are_deterministic(example, table, registry):
    program = _validated(example.code, set(example.input_names), table)
    inputs = _inputs(example.input_names)
    started = time.monotonic()
    first = execute(program, inputs, seeds=SeedPolicy(1234), round_index=0, registry=registry, table=table)
    elapsed = time.monotonic() - started
    assert elapsed < 5.0
    second = execute(program, inputs, seeds=SeedPolicy(1234), round_index=0, registry=registry, table=table)
    assert np.array_equal(first.output_wav.samples, second.output_wav.samples)
    assert len(first.trace.steps) == len(program.program.statements)
    # fixture comments ride along in the trace
    assert [s.comment for s in first.trace.steps] == [
        s.comment for s in program.program.statements
    ]


def test_child_speech_trace_and_output_duration(table, registry):
    example = FEW_SHOT_EXAMPLES[0]
    program = _validated(example.code, {"INPUT_WAV0"}, table)
    result = execute(program, _inputs({"INPUT_WAV0"}), seeds=SeedPolicy(7), registry=registry, table=table)
    assert result.output_wav.duration_seconds == pytest.approx(10.0)
    assert len(result.trace.steps) == 6


def test_mix_identity_program(table, registry):
    program = _validated("OUTPUT_WAV = MIX([(INPUT_WAV0, 0)])", {"INPUT_WAV0"}, table)
    inputs = _inputs({"INPUT_WAV0"}, seconds=2.0)
    result = execute(program, inputs, registry=registry, table=table)
    assert np.array_equal(result.output_wav.samples, inputs["INPUT_WAV0"].samples)


def test_round_index_changes_generated_audio(table, registry):
    program = _validated('OUTPUT_WAV = TTA(text="rain", length=1.0, volume=0)', set(), table)
    r0 = execute(program, {}, seeds=SeedPolicy(5), round_index=0, registry=registry, table=table)
    r1 = execute(program, {}, seeds=SeedPolicy(5), round_index=1, registry=registry, table=table)
    assert not np.array_equal(r0.output_wav.samples, r1.output_wav.samples)


def test_editing_one_line_keeps_other_lines_stable(table, registry):
    base = (
        'WAV0 = TTA(text="rain", length=1.0, volume=0)\n'
        'WAV1 = TTA(text="wind", length=1.0, volume=0)\n'
        "OUTPUT_WAV = MIX([(WAV0, 0), (WAV1, 0)])"
    )
    edited = base.replace('length=1.0, volume=0)\nWAV1', 'length=2.0, volume=0)\nWAV1')
    ra = execute(_validated(base, set(), table), {}, seeds=SeedPolicy(9), registry=registry, table=table)
    rb = execute(_validated(edited, set(), table), {}, seeds=SeedPolicy(9), registry=registry, table=table)
    # line 2 audio identical: same (seed, line), untouched by the edit on line 1
    assert np.array_equal(ra.outputs["WAV1"].samples, rb.outputs["WAV1"].samples)
    assert not np.array_equal(ra.outputs["WAV0"].samples, rb.outputs["WAV0"].samples)


def test_trace_artifacts_exist_in_store(table, registry):
    example = FEW_SHOT_EXAMPLES[0]
    program = _validated(example.code, {"INPUT_WAV0"}, table)
    result = execute(program, _inputs({"INPUT_WAV0"}), registry=registry, table=table)
    for step in result.trace.steps:
        for artifact_id in step.output_artifact_ids:
            if artifact_id is not None:
                assert artifact_id in result.artifacts
    assert result.trace.steps[-1].output_artifact_ids[0].endswith("OUTPUT_WAV")


def test_rebinding_records_both_versions(table, registry):
    source = (
        "WAV0 = ADJUST_VOL(INPUT_WAV0, volume=1)\n"
        "WAV0 = ADJUST_VOL(WAV0, volume=2)\n"
        "OUTPUT_WAV = MIX([(WAV0, 0)])"
    )
    program = _validated(source, {"INPUT_WAV0"}, table)
    result = execute(program, _inputs({"INPUT_WAV0"}, 1.0), registry=registry, table=table)
    ids = [s.output_artifact_ids[0] for s in result.trace.steps[:2]]
    assert len(set(ids)) == 2  # both generations of WAV0 kept


def test_inputs_must_match_free_variables(table, registry):
    program = _validated("OUTPUT_WAV = MIX([(INPUT_WAV0, 0)])", {"INPUT_WAV0"}, table)
    with pytest.raises(ExecutionError):
        execute(program, {}, registry=registry, table=table)
    with pytest.raises(ExecutionError):
        execute(program, _inputs({"INPUT_WAV0", "INPUT_WAV1"}, 1.0), registry=registry, table=table)


def test_statement_limit_names_the_line(table, registry):
    lines = [f"WAV{i} = ADJUST_VOL(INPUT_WAV0, volume=0)" for i in range(5)]
    lines.append("OUTPUT_WAV = MIX([(INPUT_WAV0, 0)])")
    program = _validated("\n".join(lines), {"INPUT_WAV0"}, table)
    limits = ResourceLimits(max_statements=3)
    with pytest.raises(LimitExceeded) as exc_info:
        execute(program, _inputs({"INPUT_WAV0"}, 1.0), limits=limits, registry=registry, table=table)
    assert exc_info.value.line == 4


def test_total_audio_limit(table, registry):
    program = _validated("OUTPUT_WAV = CAT([INPUT_WAV0] * 30)", {"INPUT_WAV0"}, table)
    limits = ResourceLimits(max_total_audio_seconds=20.0)
    with pytest.raises(LimitExceeded):
        execute(program, _inputs({"INPUT_WAV0"}, 2.0), limits=limits, registry=registry, table=table)


def test_single_clip_limit(table, registry):
    program = _validated("OUTPUT_WAV = CAT([INPUT_WAV0] * 4)", {"INPUT_WAV0"}, table)
    limits = ResourceLimits(max_single_audio_seconds=5.0)
    with pytest.raises(LimitExceeded):
        execute(program, _inputs({"INPUT_WAV0"}, 2.0), limits=limits, registry=registry, table=table)


def test_split_runtime_arity_check(table, registry):
    program = _validated(
        "A, B, C = SPLIT(INPUT_WAV0, break_points=[5.0, 1.0])\nOUTPUT_WAV = MIX([(A, 0)])",
        {"INPUT_WAV0"},
        table,
    )
    with pytest.raises(ExecutionError):
        execute(program, _inputs({"INPUT_WAV0"}, 2.0), registry=registry, table=table)


def test_backend_failure_carries_line(table, registry):
    program = _validated(
        'OUTPUT_WAV = INPAINT(INPUT_WAV0, text="x", onset=5, offset=9, duration=LEN(INPUT_WAV0))',
        {"INPUT_WAV0"},
        table,
    )
    with pytest.raises(ExecutionError) as exc_info:
        execute(program, _inputs({"INPUT_WAV0"}, 2.0), registry=registry, table=table)
    assert exc_info.value.line == 1


# -- eval_value ----------------------------------------------------------------


def _ctx(table, registry):
    return _Context(table=table, registry=registry, seeds=SeedPolicy(0), round_index=0, line=1)


def test_eval_value_repetition(table, registry):
    expr = parse("X = [W] * 5\nOUTPUT_WAV = W").statements[0].value
    w = rich_clip(0.5, seed=33)
    out = eval_value(expr, {"W": w}, _ctx(table, registry))
    assert isinstance(out, list) and len(out) == 5
    assert all(item is w for item in out)


def test_eval_value_arithmetic(table, registry):
    ctx = _ctx(table, registry)
    assert eval_value(parse("X = 2 + 3\nOUTPUT_WAV = W").statements[0].value, {}, ctx) == 5.0
    assert eval_value(parse("X = 7 / 2\nOUTPUT_WAV = W").statements[0].value, {}, ctx) == 3.5


def test_eval_value_division_by_zero(table, registry):
    expr = parse("X = 1 / 0\nOUTPUT_WAV = W").statements[0].value
    with pytest.raises(ExecutionError):
        eval_value(expr, {}, _ctx(table, registry))


def test_eval_value_negative_repetition(table, registry):
    expr = parse("X = [W] * (0 - 2)\nOUTPUT_WAV = W").statements[0].value
    with pytest.raises(ExecutionError):
        eval_value(expr, {"W": rich_clip(0.2, seed=34)}, _ctx(table, registry))


def test_seed_policy_is_pure():
    policy = SeedPolicy(99)
    assert policy.seed_for(1, 4) == policy.seed_for(1, 4)
    assert policy.seed_for(1, 4) != policy.seed_for(2, 4)
    assert policy.seed_for(1, 4) != policy.seed_for(1, 5)
