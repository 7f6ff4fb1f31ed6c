"""Command-line entry points.

    wavcraft edit   one-shot instruction -> output WAV
    wavcraft repl   interactive multi-round session
    wavcraft eval   synthesize editing tasks, run them, write a report
    wavcraft serve  HTTP session service
    wavcraft fsck   workspace integrity check

Exit codes: 0 success, 1 user error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from .agent import client_from_env, client_from_spec
from .audio import peak_limit, write_wav
from .backends import registry_from_env
from .errors import WavCraftError
from .evalsuite import (
    TASK_KINDS,
    report_to_csv,
    report_to_json,
    run_suite,
    synthesize_task,
    synthetic_pool,
)
from .service import ServiceConfig, Workspace, run_server

ENV_WORKSPACE = "WAVCRAFT_WORKSPACE"
ENV_SEED = "WAVCRAFT_SEED"


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="wavcraft", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    edit = sub.add_parser("edit", help="run one instruction over input audio")
    edit.add_argument("--input", action="append", default=[], help="input WAV file (repeatable)")
    edit.add_argument("--instruction", required=True)
    edit.add_argument("--out", required=True, help="output WAV path")
    edit.add_argument("--seed", type=int, default=None)
    edit.add_argument("--llm", default=None, help="'env' or 'scripted:responses.json'")
    edit.add_argument("--workspace", default=None)
    edit.add_argument("--scriptwriting", action="store_true",
                      help="ask for a narrative plan before the code")

    repl = sub.add_parser("repl", help="interactive multi-round co-creation")
    repl.add_argument("--input", action="append", default=[])
    repl.add_argument("--seed", type=int, default=None)
    repl.add_argument("--llm", default=None)
    repl.add_argument("--workspace", default=None)

    ev = sub.add_parser("eval", help="run the editing-task suite")
    ev.add_argument("--tasks", type=int, default=50, help="tasks per kind")
    ev.add_argument("--kind", default="all", choices=("all",) + TASK_KINDS)
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--report", required=True, help="JSON report path (CSV written alongside)")
    ev.add_argument("--mode", default="golden", choices=("golden", "scripted-llm"))
    ev.add_argument("--timings", action="store_true",
                    help="include wall-clock timings (report no longer byte-reproducible)")

    serve = sub.add_parser("serve", help="run the HTTP session service")
    serve.add_argument("--addr", default="127.0.0.1:8080")
    serve.add_argument("--workspace", default=None)
    serve.add_argument("--llm", default=None)

    fsck = sub.add_parser("fsck", help="check workspace integrity")
    fsck.add_argument("--workspace", default=None)
    return parser


def _workspace_root(arg: str | None, allow_temp: bool = False) -> Path:
    root = arg or os.environ.get(ENV_WORKSPACE)
    if root:
        return Path(root)
    if allow_temp:
        return Path(tempfile.mkdtemp(prefix="wavcraft-"))
    raise UsageError(f"no workspace given; pass --workspace or set {ENV_WORKSPACE}")


def _seed(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get(ENV_SEED)
    if env is not None:
        return int(env)
    import secrets

    return secrets.randbits(63)


def _llm_client(spec: str | None):
    if spec:
        return client_from_spec(spec)
    return client_from_env()


def _print_round(record) -> None:
    print(f"--- round {record.index}: {record.status} "
          f"(repair attempts: {record.repair_attempts})")
    if record.program_text:
        print(record.program_text, end="")
    for message in record.diagnostics:
        print(f"note: {message}")
    if record.error:
        print(f"error: {record.error}")


def _session_with_inputs(workspace: Workspace, input_paths, seed: int, registry):
    from .agent import caption_waveform
    from .audio import WORKING_RATE, read_wav

    state = workspace.create_session(seed)
    for path in input_paths:
        data = Path(path).read_bytes()
        wav = read_wav(data, target_rate=WORKING_RATE)
        caption = caption_waveform(wav, registry)
        name, _ = workspace.add_input(state, data, caption)
        print(f"{name}: {caption}")
    return state


def _run_one_round(workspace, state, instruction, llm, registry, scriptwriting=False):
    from .agent import run_round

    inputs = workspace.load_input_waveforms(state)
    outcome = run_round(
        state, instruction, llm, inputs, registry=registry, scriptwriting=scriptwriting
    )
    if outcome.result is not None:
        store = outcome.result.artifacts
        for local_id in store.ids():
            workspace.save_artifact(
                state.session_id, local_id, store.get(local_id),
                limit=local_id.endswith("-OUTPUT_WAV"),
            )
    workspace.save_round(state, outcome.record)
    _print_round(outcome.record)
    return outcome


def _cmd_edit(args) -> int:
    registry = registry_from_env()
    llm = _llm_client(args.llm)
    workspace = Workspace(_workspace_root(args.workspace, allow_temp=True))
    state = _session_with_inputs(workspace, args.input, _seed(args.seed), registry)
    outcome = _run_one_round(
        workspace, state, args.instruction, llm, registry, scriptwriting=args.scriptwriting
    )
    if outcome.result is None:
        return 1
    out_path = Path(args.out)
    out_path.write_bytes(write_wav(peak_limit(outcome.result.output_wav)))
    print(f"wrote {out_path}")
    return 0


def _cmd_repl(args) -> int:
    registry = registry_from_env()
    llm = _llm_client(args.llm)
    workspace = Workspace(_workspace_root(args.workspace, allow_temp=True))
    state = _session_with_inputs(workspace, args.input, _seed(args.seed), registry)
    print(f"session {state.session_id} — empty line or 'quit' to exit")
    while True:
        try:
            instruction = input("instruction> ").strip()
        except EOFError:
            break
        if not instruction or instruction.lower() in ("quit", "exit"):
            break
        outcome = _run_one_round(workspace, state, instruction, llm, registry)
        if outcome.result is not None:
            for artifact_id in outcome.record.output_artifact_ids:
                print(f"output: {workspace.artifact_path(artifact_id)}")
    return 0


def _cmd_eval(args) -> int:
    if args.tasks <= 0:
        raise UsageError("--tasks must be positive")
    kinds = TASK_KINDS if args.kind == "all" else (args.kind,)
    pool = synthetic_pool(20, seed=args.seed)
    rng = np.random.Generator(np.random.PCG64(args.seed))
    tasks = []
    for kind in kinds:
        for i in range(args.tasks):
            tasks.append(synthesize_task(kind, pool, rng, task_id=f"{kind}-{i:03d}"))
    report = run_suite(tasks, mode=args.mode, suite_seed=args.seed)
    deterministic = not args.timings
    report_path = Path(args.report)
    report_path.write_text(report_to_json(report, deterministic=deterministic))
    csv_path = report_path.with_suffix(".csv")
    csv_path.write_text(report_to_csv(report, deterministic=deterministic))
    for kind, agg in report.aggregates.items():
        mean = agg["mean_lsd"]
        print(f"{kind}: n={agg['count']} failures={agg['failures']} "
              f"mean_lsd={mean if mean is None else f'{mean:.3e}'}")
    print(f"wrote {report_path} and {csv_path}")
    return 0 if report.failure_count() == 0 else 1


def _cmd_serve(args) -> int:
    host, _, port = args.addr.partition(":")
    if not port:
        raise UsageError("--addr must be host:port")
    llm = None
    try:
        llm = _llm_client(args.llm)
    except WavCraftError as exc:
        print(f"warning: {exc}; rounds will fail until an LLM is configured", file=sys.stderr)
    env_seed = os.environ.get(ENV_SEED)
    config = ServiceConfig(
        workspace=Workspace(_workspace_root(args.workspace)),
        llm_client=llm,
        registry=registry_from_env(),
        default_session_seed=int(env_seed) if env_seed is not None else None,
    )
    print(f"serving on http://{host}:{port}")
    run_server(config, host=host, port=int(port))
    return 0


def _cmd_fsck(args) -> int:
    workspace = Workspace(_workspace_root(args.workspace))
    problems = workspace.fsck()
    if problems:
        for problem in problems:
            print(problem)
        return 1
    print("workspace OK")
    return 0


_COMMANDS = {
    "edit": _cmd_edit,
    "repl": _cmd_repl,
    "eval": _cmd_eval,
    "serve": _cmd_serve,
    "fsck": _cmd_fsck,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (WavCraftError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 1
    except Exception as exc:  # noqa: BLE001 - last-resort boundary
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
