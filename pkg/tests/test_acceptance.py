"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one line per
criterion. Tolerances are pinned here, not configurable.
"""

from __future__ import annotations

import functools
import json
import math
import threading
import time
from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

from helpers import make_noise, make_tone, rich_clip
from wavcraft.agent import (
    ScriptedLLM,
    SessionState,
    build_first_prompt,
    build_followup_prompt,
    run_round,
)
from wavcraft.agent.fewshot import FEW_SHOT_EXAMPLES
from wavcraft.agent.session import InputRecord
from wavcraft.audio import (
    RoomSpec,
    adjust_gain_db,
    add_noise_snr,
    concat,
    image_source_rir,
    lsd,
    measure_lufs,
    split,
    write_wav,
    Waveform,
)
from wavcraft.backends import (
    BackendDescriptor,
    BackendRegistry,
    GATEWAY_OPS,
    GenerativeRequest,
    RESULT_ARITY,
    StubBackendServer,
    dispatch,
    remote_call,
    stub_registry,
    waveform_from_json,
    waveform_to_json,
)
from wavcraft.engine import SeedPolicy, execute
from wavcraft.errors import BackendError
from wavcraft.evalsuite import (
    TASK_KINDS,
    golden_script,
    report_to_json,
    run_suite,
    synthesize_task,
    synthetic_pool,
    unmasked_region_bounds,
)
from wavcraft.lang import default_signature_table, parse, validate
from wavcraft.service import ServiceConfig, Workspace, create_app

GOLDEN = Path(__file__).parent / "golden"


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {name}: FAIL")
                raise
            print(f"ACCEPTANCE {name}: PASS")
        return wrapper
    return decorate


@criterion("fixture-fidelity")
def test_fixture_fidelity():
    table = default_signature_table()
    registry = stub_registry()
    for example in FEW_SHOT_EXAMPLES:
        program = validate(parse(example.code), table, set(example.input_names))
        inputs = {
            name: rich_clip(10.0, seed=200 + i)
            for i, name in enumerate(example.input_names)
        }
        started = time.monotonic()
        first = execute(program, inputs, seeds=SeedPolicy(42), round_index=0,
                        registry=registry, table=table)
        assert time.monotonic() - started < 5.0
        second = execute(program, inputs, seeds=SeedPolicy(42), round_index=0,
                         registry=registry, table=table)
        assert np.array_equal(first.output_wav.samples, second.output_wav.samples)
        assert len(first.trace.steps) == len(program.program.statements)


@criterion("prompt-snapshots")
def test_prompt_snapshots():
    captions = {
        "INPUT_WAV0": "a 10.0 second moderate mid-frequency sound",
        "INPUT_WAV1": "a 4.0 second quiet low-frequency sound",
    }
    first = build_first_prompt(captions, "Remove the hum and add soft rain in the background.")
    assert first.startswith("You are an professional audio editor.")
    assert first.splitlines()[-1] == "Code:"
    assert first == GOLDEN.joinpath("first_prompt.txt").read_text(encoding="utf-8")

    followup = build_followup_prompt(
        captions,
        ["Remove the hum and add soft rain in the background.",
         "Remove the audio content between 6-10s."],
        "Add more cheers sound in the end",
    )
    assert "Regenerate the code by appending the new instruction" in followup
    assert followup == GOLDEN.joinpath("followup_prompt.txt").read_text(encoding="utf-8")


@criterion("follow-up-safety")
def test_followup_safety():
    session = SessionState(session_id="acceptance001", session_seed=7)
    session.inputs.append(
        InputRecord(name="INPUT_WAV0", artifact_id="acceptance001:input-INPUT_WAV0",
                    caption="a clip")
    )
    wavs = {"INPUT_WAV0": rich_clip(8.0, seed=210)}
    table = default_signature_table()

    round1 = ScriptedLLM(['Code:\n_, OUTPUT_WAV = TSS(INPUT_WAV0, text="hum")'])
    assert run_round(session, "Remove the hum", round1, wavs).record.status == "ok"

    round2 = ScriptedLLM([
        "Code:\nOUTPUT_WAV = ADJUST_VOL(OUTPUT_WAV, volume=3)",  # consumes prior output
        'Code:\n_, WAV0 = TSS(INPUT_WAV0, text="hum")\nOUTPUT_WAV = ADJUST_VOL(WAV0, volume=3)',
    ])
    outcome = run_round(session, "Make it louder", round2, wavs)
    assert outcome.record.status == "repaired"
    assert outcome.record.repair_attempts == 1
    validated = validate(parse(outcome.record.program_text), table, {"INPUT_WAV0"})
    assert validated.allowed_inputs == frozenset({"INPUT_WAV0"})


@criterion("dsp-suite")
def test_dsp_suite():
    # LUFS compliance tone
    tone = make_tone(997.0, 10.0, rate=48_000, amplitude=1.0)
    assert measure_lufs(tone) == pytest.approx(-3.01, abs=0.1)

    # concat(split(w)) == w bit-exact over 100 random cases
    w = make_noise(8.0, seed=211)
    rng = np.random.default_rng(212)
    for _ in range(100):
        k = int(rng.integers(0, 6))
        points = sorted(set(float(t) for t in rng.uniform(0.05, 7.9, size=k)))
        assert np.array_equal(concat(split(w, points)).samples, w.samples)

    # gain composition within 1e-6
    lhs = adjust_gain_db(adjust_gain_db(w, 4.4), -2.2)
    rhs = adjust_gain_db(w, 2.2)
    assert np.max(np.abs(lhs.samples - rhs.samples)) < 1e-6

    # LSD laws
    x = make_noise(3.0, rms=0.1, seed=213)
    assert lsd(x, x) == 0.0
    assert lsd(x, Waveform(10.0 * x.samples, x.sample_rate)) == pytest.approx(1.0, abs=1e-6)

    # room direct-path delay within one sample of distance / 343
    spec = RoomSpec(size_x=6.0, size_y=5.0, size_z=3.0, absorption=0.5,
                    source_x=2.0, source_y=2.0, source_z=1.5,
                    mic_distance=1.715, mic_azimuth_deg=30.0, mic_elevation_deg=5.0)
    ir = image_source_rir(spec, 16_000, max_order=6)
    first_tap = int(np.nonzero(ir.samples)[0][0])
    assert abs(first_tap - 80) <= 1

    # add_noise_snr hits the target within 0.1 dB
    signal = make_noise(2.0, rms=0.1, seed=214)
    noisy = add_noise_snr(signal, 20.0, np.random.Generator(np.random.PCG64(215)))
    noise = noisy.samples - signal.samples
    achieved = 20 * math.log10(signal.rms() / float(np.sqrt(np.mean(np.square(noise)))))
    assert achieved == pytest.approx(20.0, abs=0.1)


@criterion("editing-task-suite")
def test_editing_task_suite():
    started = time.monotonic()
    pool = synthetic_pool(20, seed=7)

    def build_tasks():
        rng = np.random.default_rng(7)
        return [
            synthesize_task(kind, pool, rng, task_id=f"{kind}-{i:03d}")
            for kind in TASK_KINDS
            for i in range(50)
        ]

    tasks = build_tasks()
    report = run_suite(tasks, mode="golden", suite_seed=7)
    assert report.failure_count() == 0
    assert report.mean_lsd("add") < 1e-6
    assert report.mean_lsd("removal") < 1e-6
    assert report.mean_lsd("replacement") < 1e-6
    assert report.mean_lsd("super_resolution") < 0.1

    # infilling: outside the crossfade-padded mask the output equals the
    # ground truth sample for sample
    table = default_signature_table()
    registry = stub_registry()
    for task in [t for t in tasks if t.kind == "infilling"][:10]:
        program = validate(golden_script(task), table, set(task.inputs))
        result = execute(program, dict(task.inputs), seeds=SeedPolicy(7),
                         registry=registry, table=table)
        out = result.output_wav
        start, stop = unmasked_region_bounds(task)
        diff_head = out.samples[:start] - task.ground_truth.samples[:start]
        diff_tail = out.samples[stop:] - task.ground_truth.samples[stop:]
        assert np.max(np.abs(np.concatenate([diff_head, diff_tail]))) == 0.0

    # byte-reproducible report under a fixed seed
    report_again = run_suite(build_tasks(), mode="golden", suite_seed=7)
    assert report_to_json(report, deterministic=True) == report_to_json(
        report_again, deterministic=True
    )

    assert time.monotonic() - started < 120.0


@criterion("protocol-conformance")
def test_protocol_conformance():
    wav = rich_clip(2.0, seed=216)
    # encoding round trip within 1e-7
    decoded = waveform_from_json(waveform_to_json(wav))
    assert np.max(np.abs(decoded.samples - wav.samples)) < 1e-7

    with StubBackendServer() as server:
        remote = BackendRegistry({
            op: BackendDescriptor(op, "remote", endpoint=server.endpoint, timeout_s=10.0)
            for op in GATEWAY_OPS
        })
        requests_by_op = {
            "TTA": GenerativeRequest("TTA", text="wind", params={"length": 1.0, "seed": 1}),
            "TTS": GenerativeRequest("TTS", text="hello", params={"seed": 1}),
            "TTM": GenerativeRequest("TTM", text="waltz", params={"length": 1.0, "seed": 1}),
            "TSS": GenerativeRequest("TSS", text="hum", inputs=(wav,), params={"seed": 1}),
            "EXTRACT": GenerativeRequest("EXTRACT", text="hum", inputs=(wav,), params={"seed": 1}),
            "DROP": GenerativeRequest("DROP", text="hum", inputs=(wav,), params={"seed": 1}),
            "SR": GenerativeRequest("SR", inputs=(wav,), params={"seed": 1}),
            "INPAINT": GenerativeRequest("INPAINT", text="buzz", inputs=(wav,),
                                         params={"onset": 0.5, "offset": 1.0, "seed": 1}),
            "CAPTION": GenerativeRequest("CAPTION", inputs=(wav,)),
        }
        # the same checks pass with every stub behind the HTTP server
        for registry in (stub_registry(), remote):
            for op, request in requests_by_op.items():
                response = dispatch(request, registry)
                assert len(response.outputs) == RESULT_ARITY[op]
            fg, bg = dispatch(requests_by_op["TSS"], registry).outputs
            assert np.max(np.abs(fg.samples + bg.samples - wav.samples)) <= 3e-7
        # error mapping
        with pytest.raises(BackendError):
            remote_call(server.endpoint, GenerativeRequest(op="NOPE", request_id="x"))
    with StubBackendServer(delay_s=0.4) as slow:
        with pytest.raises(BackendError):
            remote_call(slow.endpoint,
                        GenerativeRequest("TTA", text="x", params={"length": 0.5, "seed": 1}),
                        timeout_s=0.001, retries=1)


@criterion("service")
def test_service(tmp_path):
    class SlowLLM:
        def __init__(self):
            self.script = 'Code:\n_, OUTPUT_WAV = TSS(INPUT_WAV0, text="hum")'

        def chat(self, messages):
            time.sleep(0.5)
            return self.script

    config = ServiceConfig(
        workspace=Workspace(tmp_path / "ws"),
        llm_client=SlowLLM(),
        registry=stub_registry(),
        default_session_seed=5,
    )
    client = TestClient(create_app(config))

    session_id = client.post("/v1/sessions", json={}).json()["session_id"]
    upload = client.post(f"/v1/sessions/{session_id}/inputs",
                         content=write_wav(rich_clip(6.0, seed=217)))
    assert upload.status_code == 200

    statuses = []
    lock = threading.Lock()

    def post_round():
        response = client.post(f"/v1/sessions/{session_id}/rounds",
                               json={"instruction": "Remove the hum"})
        with lock:
            statuses.append(response.status_code)

    threads = [threading.Thread(target=post_round) for _ in range(2)]
    threads[0].start()
    time.sleep(0.1)
    threads[1].start()
    for thread in threads:
        thread.join()
    assert sorted(statuses) == [200, 409]

    # two more rounds for the persistence check
    for instruction in ("again", "once more"):
        response = client.post(f"/v1/sessions/{session_id}/rounds",
                               json={"instruction": instruction})
        assert response.status_code == 200

    state = client.get(f"/v1/sessions/{session_id}").json()
    assert state["round_count"] == 3
    artifact_id = state["rounds"][0]["output_artifact_ids"][0]
    artifact = client.get(f"/v1/artifacts/{artifact_id}")
    assert artifact.status_code == 200 and artifact.content[:4] == b"RIFF"

    workspace = config.workspace
    loaded = workspace.load_session(session_id)
    assert loaded.to_dict() == {**state}
    assert workspace.fsck() == []
