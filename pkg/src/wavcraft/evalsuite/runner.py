"""Suite runner: executes tasks, scores against ground truth, aggregates.

Scoring per kind: full-band log spectral distance for add/removal/
replacement; super-resolution compares below 4 kHz after bringing the output
back to the ground-truth rate; infilling scores only the region the inpaint
is not allowed to touch and additionally requires it to be bit-identical.

Wall-clock timings are recorded per row but zeroed when serializing
deterministically, since they are the one field that cannot reproduce
byte-for-byte across runs.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..audio import WORKING_RATE, Waveform, lsd, resample
from ..backends import BackendRegistry, stub_registry
from ..engine import ResourceLimits, SeedPolicy, execute
from ..errors import ConfigError, WavCraftError
from ..lang import SignatureTable, default_signature_table, validate
from ..lang.validate import free_input_names
from .tasks import EditingTask, golden_script, unmasked_region_bounds

SR_EVAL_BAND_HZ = 4_000.0


@dataclass
class TaskResult:
    task_id: str
    kind: str
    lsd: float | None
    runtime_ms: float
    status: str  # ok | failed
    error: str | None = None


@dataclass
class EvalReport:
    results: list[TaskResult]
    aggregates: dict[str, dict] = field(default_factory=dict)

    def recompute_aggregates(self) -> None:
        by_kind: dict[str, list[TaskResult]] = {}
        for result in self.results:
            by_kind.setdefault(result.kind, []).append(result)
        self.aggregates = {}
        for kind, rows in sorted(by_kind.items()):
            scored = [r.lsd for r in rows if r.status == "ok" and r.lsd is not None]
            self.aggregates[kind] = {
                "count": len(rows),
                "failures": sum(1 for r in rows if r.status != "ok"),
                "mean_lsd": (sum(scored) / len(scored)) if scored else None,
            }

    def mean_lsd(self, kind: str) -> float | None:
        return self.aggregates.get(kind, {}).get("mean_lsd")

    def failure_count(self) -> int:
        return sum(a["failures"] for a in self.aggregates.values())


def _ingest(wav: Waveform) -> Waveform:
    return wav if wav.sample_rate == WORKING_RATE else resample(wav, WORKING_RATE)


def score_task(task: EditingTask, output: Waveform) -> float:
    gt = task.ground_truth
    if task.kind == "super_resolution":
        comparable = resample(output, gt.sample_rate)
        return lsd(comparable, gt, max_freq_hz=SR_EVAL_BAND_HZ)
    if task.kind == "infilling":
        start, stop = unmasked_region_bounds(task)
        out_region = np.concatenate([output.samples[:start], output.samples[stop:]])
        gt_region = np.concatenate([gt.samples[:start], gt.samples[stop:]])
        if out_region.size and np.max(np.abs(out_region - gt_region)) > 0:
            raise WavCraftError(
                "inpaint modified samples outside the masked region"
            )
        return lsd(
            Waveform(out_region, output.sample_rate), Waveform(gt_region, gt.sample_rate)
        )
    return lsd(output, gt)


def _run_golden(
    task: EditingTask,
    registry: BackendRegistry,
    table: SignatureTable,
    seeds: SeedPolicy,
    round_index: int,
) -> Waveform:
    program = golden_script(task)
    inputs = {name: _ingest(wav) for name, wav in task.inputs.items()}
    validated = validate(program, table, set(inputs))
    result = execute(
        validated,
        inputs,
        limits=ResourceLimits(),
        seeds=seeds,
        round_index=round_index,
        registry=registry,
        table=table,
    )
    return result.output_wav


def _run_scripted_llm(
    task: EditingTask,
    registry: BackendRegistry,
    table: SignatureTable,
    suite_seed: int,
    round_index: int,
) -> Waveform:
    from ..agent import ScriptedLLM, SessionState, run_round
    from ..lang import format_program

    script_text = format_program(golden_script(task))
    llm = ScriptedLLM([f"Code:\n{script_text}"])
    inputs = {name: _ingest(wav) for name, wav in task.inputs.items()}
    session = SessionState(session_id=f"eval-{task.task_id}", session_seed=suite_seed)
    from ..agent.session import InputRecord

    for name in sorted(inputs):
        session.inputs.append(InputRecord(name=name, artifact_id=name, caption=task.metadata.get("C_A", "")))
    outcome = run_round(session, task.instruction, llm, inputs, registry=registry, table=table)
    if outcome.result is None:
        raise WavCraftError(outcome.record.error or "round failed")
    return outcome.result.output_wav


def run_suite(
    tasks: list[EditingTask],
    mode: str = "golden",
    registry: BackendRegistry | None = None,
    table: SignatureTable | None = None,
    suite_seed: int = 0,
    max_workers: int = 4,
) -> EvalReport:
    """Execute every task and score it; failures are recorded, never raised."""
    if not tasks:
        raise ConfigError("run_suite needs at least one task")
    if mode not in ("golden", "scripted-llm"):
        raise ConfigError(f"unknown engine mode {mode!r}")
    registry = registry or stub_registry()
    table = table or default_signature_table()
    seeds = SeedPolicy(suite_seed)

    def one(index_task: tuple[int, EditingTask]) -> TaskResult:
        index, task = index_task
        started = time.monotonic()
        try:
            if mode == "golden":
                output = _run_golden(task, registry, table, seeds, index)
            else:
                output = _run_scripted_llm(task, registry, table, suite_seed, index)
            score = score_task(task, output)
            return TaskResult(
                task_id=task.task_id,
                kind=task.kind,
                lsd=score,
                runtime_ms=(time.monotonic() - started) * 1000.0,
                status="ok",
            )
        except WavCraftError as exc:
            return TaskResult(
                task_id=task.task_id,
                kind=task.kind,
                lsd=None,
                runtime_ms=(time.monotonic() - started) * 1000.0,
                status="failed",
                error=str(exc),
            )

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(one, enumerate(tasks)))
    else:
        results = [one(item) for item in enumerate(tasks)]

    report = EvalReport(results=results)
    report.recompute_aggregates()
    return report


def report_to_dict(report: EvalReport, deterministic: bool = False) -> dict:
    return {
        "results": [
            {
                "task_id": r.task_id,
                "kind": r.kind,
                "lsd": r.lsd,
                "runtime_ms": 0.0 if deterministic else round(r.runtime_ms, 3),
                "status": r.status,
                "error": r.error,
            }
            for r in report.results
        ],
        "aggregates": report.aggregates,
    }


def report_to_json(report: EvalReport, deterministic: bool = False) -> str:
    return json.dumps(report_to_dict(report, deterministic), indent=2, sort_keys=True) + "\n"


def report_to_csv(report: EvalReport, deterministic: bool = False) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["kind", "task_id", "lsd", "runtime_ms", "status"])
    for r in report.results:
        writer.writerow(
            [
                r.kind,
                r.task_id,
                "" if r.lsd is None else repr(r.lsd),
                "0.0" if deterministic else repr(round(r.runtime_ms, 3)),
                r.status,
            ]
        )
    return buffer.getvalue()
