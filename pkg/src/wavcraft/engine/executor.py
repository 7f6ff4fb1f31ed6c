"""Interpreter for validated programs.

Each statement is evaluated in order against an environment of bound values;
DSP calls run natively, generative calls go through the backend gateway.
Every generative or randomized statement gets a seed derived from
(session_seed, round_index, line), so editing one line of a program leaves
the audio produced by every other line unchanged across regenerations.
"""

from __future__ import annotations

import hashlib
import struct
import threading
import time
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from ..audio import (
    FilterParams,
    Waveform,
    add_noise_snr,
    adjust_gain_db,
    biquad_filter,
    clip,
    concat,
    convolve_rir,
    length_seconds,
    mix,
    room_spec_from_ranges,
    sample_range,
    simulate_room,
    snap_rolloff,
    split,
)
from ..audio.room import ROOM_PARAM_ORDER
from ..backends import BackendRegistry, GenerativeRequest, dispatch
from ..errors import AudioError, BackendError, ExecutionError, LimitExceeded, WavCraftError
from ..lang.ast import (
    AUDIO,
    BinOp,
    Call,
    Expr,
    ListLit,
    NumLit,
    StrLit,
    TupleLit,
    Var,
    WILDCARD,
)
from ..lang.signatures import SignatureTable, bind_call_args, default_signature_table
from ..lang.validate import OUTPUT_NAME, ValidatedProgram

Value = Any  # Waveform | float | str | list | tuple


@dataclass(frozen=True)
class SeedPolicy:
    """Pure derivation: seed(round, line) = hash(session_seed, round, line)."""

    session_seed: int

    def seed_for(self, round_index: int, line: int) -> int:
        digest = hashlib.sha256(
            b"wavcraft-seed" + struct.pack("<qqq", self.session_seed, round_index, line)
        ).digest()
        return int.from_bytes(digest[:8], "little") >> 1


@dataclass(frozen=True)
class ResourceLimits:
    max_statements: int = 64
    max_total_audio_seconds: float = 600.0
    max_wall_ms: float = 120_000.0
    max_single_audio_seconds: float = 300.0

    def __post_init__(self):
        if min(
            self.max_statements,
            self.max_total_audio_seconds,
            self.max_wall_ms,
            self.max_single_audio_seconds,
        ) <= 0:
            raise ValueError("resource limits must be positive")


@dataclass(frozen=True)
class TraceStep:
    line: int
    comment: str | None
    op: str | None
    inputs_summary: str
    output_artifact_ids: tuple[str | None, ...]
    elapsed_ms: float
    seed: int | None


@dataclass(frozen=True)
class ExecutionTrace:
    steps: tuple[TraceStep, ...]


class ArtifactStore:
    """Append-only id -> waveform map; synchronized for concurrent readers."""

    def __init__(self):
        self._items: dict[str, Waveform] = {}
        self._lock = threading.Lock()

    def put(self, artifact_id: str, wav: Waveform) -> None:
        with self._lock:
            if artifact_id in self._items:
                raise ExecutionError(f"artifact id {artifact_id!r} already exists")
            self._items[artifact_id] = wav

    def get(self, artifact_id: str) -> Waveform:
        with self._lock:
            return self._items[artifact_id]

    def __contains__(self, artifact_id: str) -> bool:
        with self._lock:
            return artifact_id in self._items

    def ids(self) -> list[str]:
        with self._lock:
            return list(self._items)


@dataclass
class ExecutionResult:
    outputs: dict[str, Value]
    trace: ExecutionTrace
    artifacts: ArtifactStore

    @property
    def output_wav(self) -> Waveform:
        return self.outputs[OUTPUT_NAME]


@dataclass
class _Context:
    table: SignatureTable
    registry: BackendRegistry
    seeds: SeedPolicy
    round_index: int
    line: int = 0
    seed_used: int | None = None
    op_used: str | None = None

    def statement_seed(self) -> int:
        self.seed_used = self.seeds.seed_for(self.round_index, self.line)
        return self.seed_used


def _summarize(value: Value) -> str:
    if isinstance(value, Waveform):
        return f"audio({value.duration_seconds:.2f}s@{value.sample_rate}Hz)"
    if isinstance(value, float):
        return f"{value:g}"
    if isinstance(value, str):
        return repr(value if len(value) <= 40 else value[:37] + "...")
    if isinstance(value, (list, tuple)):
        inner = ", ".join(_summarize(v) for v in value[:4])
        if len(value) > 4:
            inner += ", ..."
        return f"[{inner}]" if isinstance(value, list) else f"({inner})"
    return repr(value)


def execute(
    program: ValidatedProgram,
    inputs: dict[str, Waveform],
    limits: ResourceLimits | None = None,
    seeds: SeedPolicy | None = None,
    round_index: int = 0,
    registry: BackendRegistry | None = None,
    table: SignatureTable | None = None,
) -> ExecutionResult:
    """Run a validated program over concrete inputs.

    Deterministic in stub mode: identical (program, inputs, session_seed,
    round_index) produce bit-identical outputs.
    """
    from ..backends import stub_registry

    limits = limits or ResourceLimits()
    seeds = seeds or SeedPolicy(session_seed=0)
    registry = registry or stub_registry()
    table = table or default_signature_table()

    missing = program.allowed_inputs - set(inputs)
    extra = set(inputs) - program.allowed_inputs
    if missing or extra:
        raise ExecutionError(
            f"inputs do not match the program's free variables "
            f"(missing {sorted(missing)}, unexpected {sorted(extra)})"
        )

    statements = program.program.statements
    if len(statements) > limits.max_statements:
        over = statements[limits.max_statements]
        raise LimitExceeded(
            f"program has {len(statements)} statements, limit is {limits.max_statements}",
            line=over.line,
        )

    env: dict[str, Value] = dict(inputs)
    store = ArtifactStore()
    steps: list[TraceStep] = []
    ctx = _Context(table=table, registry=registry, seeds=seeds, round_index=round_index)
    started = time.monotonic()
    total_audio_s = 0.0

    for stmt in statements:
        elapsed_ms = (time.monotonic() - started) * 1000.0
        if elapsed_ms > limits.max_wall_ms:
            raise LimitExceeded(
                f"wall clock {elapsed_ms:.0f} ms exceeded limit {limits.max_wall_ms:.0f} ms",
                line=stmt.line,
            )
        ctx.line = stmt.line
        ctx.seed_used = None
        ctx.op_used = stmt.value.op if isinstance(stmt.value, Call) else None
        step_start = time.monotonic()
        inputs_summary = ""
        if isinstance(stmt.value, Call):
            inputs_summary = ", ".join(
                [_summarize_expr(a, env) for a in stmt.value.args]
                + [f"{k}={_summarize_expr(v, env)}" for k, v in stmt.value.kwargs]
            )

        value = eval_value(stmt.value, env, ctx)

        results: tuple[Value, ...]
        if len(stmt.targets) > 1:
            if not isinstance(value, (list, tuple)) or len(value) != len(stmt.targets):
                got = len(value) if isinstance(value, (list, tuple)) else 1
                raise ExecutionError(
                    f"statement binds {len(stmt.targets)} names but got {got} values",
                    line=stmt.line,
                )
            results = tuple(value)
        else:
            results = (value,)

        artifact_ids: list[str | None] = []
        for name, result in zip(stmt.targets, results):
            if isinstance(result, Waveform):
                duration = result.duration_seconds
                if duration > limits.max_single_audio_seconds:
                    raise LimitExceeded(
                        f"clip of {duration:.1f} s exceeds single-clip limit "
                        f"{limits.max_single_audio_seconds:.1f} s",
                        line=stmt.line,
                    )
                total_audio_s += duration
                if total_audio_s > limits.max_total_audio_seconds:
                    raise LimitExceeded(
                        f"total produced audio {total_audio_s:.1f} s exceeds limit "
                        f"{limits.max_total_audio_seconds:.1f} s",
                        line=stmt.line,
                    )
            if name == WILDCARD:
                artifact_ids.append(None)
                continue
            if isinstance(result, Waveform):
                artifact_id = f"r{round_index:02d}-L{stmt.line:03d}-{name}"
                store.put(artifact_id, result)
                artifact_ids.append(artifact_id)
            else:
                artifact_ids.append(None)
            env[name] = result

        steps.append(
            TraceStep(
                line=stmt.line,
                comment=stmt.comment,
                op=ctx.op_used,
                inputs_summary=inputs_summary,
                output_artifact_ids=tuple(artifact_ids),
                elapsed_ms=(time.monotonic() - step_start) * 1000.0,
                seed=ctx.seed_used,
            )
        )

    if OUTPUT_NAME not in env:
        raise ExecutionError(f"{OUTPUT_NAME} was not produced")  # unreachable after validation
    return ExecutionResult(outputs=env, trace=ExecutionTrace(tuple(steps)), artifacts=store)


def _summarize_expr(expr: Expr, env: dict[str, Value]) -> str:
    if isinstance(expr, Var) and expr.name in env:
        return f"{expr.name}={_summarize(env[expr.name])}"
    if isinstance(expr, NumLit):
        return f"{float(expr.value):g}"
    if isinstance(expr, StrLit):
        return repr(expr.value)
    return "<expr>"


def eval_value(expr: Expr, env: dict[str, Value], ctx: _Context) -> Value:
    if isinstance(expr, NumLit):
        return float(expr.value)
    if isinstance(expr, StrLit):
        return expr.value
    if isinstance(expr, Var):
        try:
            return env[expr.name]
        except KeyError:
            raise ExecutionError(f"unbound variable {expr.name!r}", line=ctx.line) from None
    if isinstance(expr, ListLit):
        return [eval_value(item, env, ctx) for item in expr.items]
    if isinstance(expr, TupleLit):
        return tuple(eval_value(item, env, ctx) for item in expr.items)
    if isinstance(expr, BinOp):
        return _eval_binop(expr, env, ctx)
    if isinstance(expr, Call):
        return _eval_call(expr, env, ctx)
    raise ExecutionError(f"unhandled expression {expr!r}", line=ctx.line)


def _eval_binop(expr: BinOp, env: dict[str, Value], ctx: _Context) -> Value:
    lhs = eval_value(expr.lhs, env, ctx)
    rhs = eval_value(expr.rhs, env, ctx)
    if expr.op == "*" and isinstance(lhs, list):
        if not isinstance(rhs, float) or rhs != int(rhs):
            raise ExecutionError("list repetition count must be an integer", line=ctx.line)
        count = int(rhs)
        if count < 0:
            raise ExecutionError(f"negative repetition count {count}", line=ctx.line)
        return lhs * count
    for side, value in (("left", lhs), ("right", rhs)):
        if not isinstance(value, float):
            raise ExecutionError(
                f"{side} operand of {expr.op!r} must be a number, got {type(value).__name__}",
                line=ctx.line,
            )
    if expr.op == "+":
        return lhs + rhs
    if expr.op == "-":
        return lhs - rhs
    if expr.op == "*":
        return lhs * rhs
    if rhs == 0.0:
        raise ExecutionError("division by zero", line=ctx.line)
    return lhs / rhs


def _eval_call(call: Call, env: dict[str, Value], ctx: _Context) -> Value:
    sig = ctx.table.get(call.op)
    if sig is None:
        raise ExecutionError(f"unknown operation {call.op!r}", line=ctx.line)
    if call.op == "MIX" and len(call.args) > 1 and not call.kwargs:
        call = Call("MIX", (ListLit(tuple(call.args)),), (), line=call.line)
    bound = bind_call_args(sig, call.args, call.kwargs)
    if bound.errors:
        raise ExecutionError("; ".join(bound.errors), line=ctx.line)
    values: dict[str, Value] = {}
    for param in sig.params:
        if param.name in bound.by_name:
            values[param.name] = eval_value(bound.by_name[param.name], env, ctx)
        elif not param.required:
            values[param.name] = param.default
    try:
        if sig.generative:
            return _run_generative(call.op, sig, values, ctx)
        return _run_native(call.op, values, ctx)
    except (AudioError, BackendError) as exc:
        raise ExecutionError(str(exc), line=ctx.line) from exc


def _audio(values: dict[str, Value], name: str, op: str, ctx: _Context) -> Waveform:
    value = values[name]
    if not isinstance(value, Waveform):
        raise ExecutionError(
            f"{op} parameter {name!r} must be audio, got {type(value).__name__}", line=ctx.line
        )
    return value


def _run_native(op: str, values: dict[str, Value], ctx: _Context) -> Value:
    if op == "LEN":
        return length_seconds(_audio(values, "wav", op, ctx))
    if op == "MIX":
        entries = values["wavs"]
        if not isinstance(entries, list):
            raise ExecutionError("MIX takes a list of (wav, onset) tuples", line=ctx.line)
        parsed = []
        for entry in entries:
            if (
                not isinstance(entry, tuple)
                or len(entry) != 2
                or not isinstance(entry[0], Waveform)
                or not isinstance(entry[1], float)
            ):
                raise ExecutionError(
                    "each MIX entry must be a (wav, onset_seconds) tuple", line=ctx.line
                )
            parsed.append((entry[0], entry[1]))
        return mix(parsed)
    if op == "CAT":
        wavs = values["wavs"]
        if not isinstance(wavs, list) or not all(isinstance(w, Waveform) for w in wavs):
            raise ExecutionError("CAT takes a list of waveforms", line=ctx.line)
        return concat(wavs)
    if op == "SPLIT":
        bps = values["break_points"]
        if not isinstance(bps, list) or not all(isinstance(b, float) for b in bps):
            raise ExecutionError("SPLIT break_points must be a list of numbers", line=ctx.line)
        return split(_audio(values, "wav", op, ctx), bps)
    if op == "CLIP":
        return clip(_audio(values, "wav", op, ctx), values["onset"], values["offset"])
    if op == "ADJUST_VOL":
        return adjust_gain_db(_audio(values, "wav", op, ctx), values["volume"])
    if op in ("LOW_PASS", "HIGH_PASS"):
        rng = np.random.Generator(np.random.PCG64(ctx.statement_seed()))
        cutoff = sample_range(values["min_cutoff_freq"], values["max_cutoff_freq"], rng)
        rolloff = snap_rolloff(sample_range(values["min_rolloff"], values["max_rolloff"], rng))
        kind = "low_pass" if op == "LOW_PASS" else "high_pass"
        return biquad_filter(_audio(values, "wav", op, ctx), FilterParams(kind, cutoff, rolloff))
    if op == "ADD_NOISE":
        rng = np.random.Generator(np.random.PCG64(ctx.statement_seed()))
        snr = sample_range(values["min_snr_db"], values["max_snr_db"], rng)
        return add_noise_snr(_audio(values, "wav", op, ctx), snr, rng)
    if op == "ADD_RIR":
        return convolve_rir(_audio(values, "wav", op, ctx), _audio(values, "ir", op, ctx))
    if op == "ROOM_SIMULATE":
        rng = np.random.Generator(np.random.PCG64(ctx.statement_seed()))
        ranges = {
            key: (values[f"min_{key}"], values[f"max_{key}"]) for key in ROOM_PARAM_ORDER
        }
        spec = room_spec_from_ranges(ranges, rng)
        return simulate_room(_audio(values, "wav", op, ctx), spec)
    raise ExecutionError(f"no native handler for {op!r}", line=ctx.line)


def _run_generative(op: str, sig, values: dict[str, Value], ctx: _Context) -> Value:
    text = values.get("text")
    audio_inputs = tuple(
        values[p.name]
        for p in sig.params
        if p.type == AUDIO and isinstance(values.get(p.name), Waveform)
    )
    params: dict[str, Any] = {}
    for p in sig.params:
        if p.name == "text" or p.type == AUDIO:
            continue
        value = values.get(p.name)
        if value is not None:
            params[p.name] = value
    # the per-statement derived seed; an explicit literal (SR's seed param) wins
    if params.get("seed") is None:
        params["seed"] = ctx.statement_seed()
    else:
        params["seed"] = int(params["seed"])
        ctx.seed_used = params["seed"]
    request = GenerativeRequest(
        op=op,
        text=text,
        params=params,
        inputs=audio_inputs,
        request_id=f"{op.lower()}-{ctx.round_index}-{ctx.line}-{params['seed']:016x}",
    )
    try:
        response = dispatch(request, ctx.registry)
    except WavCraftError as exc:
        raise ExecutionError(f"{op} backend failed: {exc}", line=ctx.line) from exc
    if len(response.outputs) == 1:
        return response.outputs[0]
    return tuple(response.outputs)
