"""The instruction-to-audio round loop.

One round: assemble the prompt from captions and instruction history, call
the LLM, extract and parse the code, validate it against the original inputs
only, and execute it. Parse or validation failures are fed back to the LLM
with their diagnostics for up to two repair attempts; execution failures are
surfaced in the round record.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..audio import Waveform
from ..backends import BackendRegistry, stub_registry
from ..engine import ExecutionResult, ResourceLimits, SeedPolicy, execute
from ..errors import (
    CodeExtractionError,
    ExecutionError,
    ParseError,
    ValidationError,
)
from ..lang import (
    SignatureTable,
    default_signature_table,
    extract_code,
    format_program,
    parse,
    validate,
)
from .prompts import build_first_prompt, build_followup_prompt
from .session import RoundRecord, SessionState

logger = logging.getLogger(__name__)

MAX_REPAIR_ATTEMPTS = 2

REPAIR_TEMPLATE = (
    "The previous code failed validation: {diagnostics}. Regenerate."
)


@dataclass
class RoundOutcome:
    record: RoundRecord
    result: ExecutionResult | None  # None when status == "failed"


def _trace_to_dicts(result: ExecutionResult, session_id: str) -> list[dict]:
    return [
        {
            "line": step.line,
            "comment": step.comment,
            "op": step.op,
            "inputs": step.inputs_summary,
            "output_artifact_ids": [
                f"{session_id}:{i}" for i in step.output_artifact_ids if i
            ],
            "elapsed_ms": round(step.elapsed_ms, 3),
            "seed": step.seed,
        }
        for step in result.trace.steps
    ]


def run_round(
    session: SessionState,
    instruction: str,
    llm_client,
    input_waveforms: dict[str, Waveform],
    registry: BackendRegistry | None = None,
    table: SignatureTable | None = None,
    limits: ResourceLimits | None = None,
    scriptwriting: bool = False,
) -> RoundOutcome:
    """Run one co-creation round and append its record to the session."""
    registry = registry or stub_registry()
    table = table or default_signature_table()
    round_index = len(session.rounds)
    captions = session.captions()
    if round_index == 0:
        prompt = build_first_prompt(captions, instruction, scriptwriting=scriptwriting)
    else:
        prompt = build_followup_prompt(
            captions, session.instructions(), instruction, scriptwriting=scriptwriting
        )

    messages = [{"role": "user", "content": prompt}]
    diagnostics: list[str] = []
    attempts = 0
    response = ""
    validated = None

    while True:
        response = llm_client.chat(messages)
        try:
            code = extract_code(response)
            program = parse(code)
            validated = validate(program, table, session.allowed_inputs())
            break
        except (CodeExtractionError, ParseError, ValidationError) as exc:
            found = getattr(exc, "diagnostics", None)
            messages_text = (
                "; ".join(str(d) for d in found) if found else str(exc)
            )
            diagnostics.append(messages_text)
            attempts += 1
            if attempts > MAX_REPAIR_ATTEMPTS:
                record = RoundRecord(
                    index=round_index,
                    user_instruction=instruction,
                    prompt_sent=prompt,
                    llm_response=response,
                    program_text=None,
                    status="failed",
                    repair_attempts=attempts - 1,
                    diagnostics=diagnostics,
                    error="all repair attempts exhausted",
                )
                session.rounds.append(record)
                return RoundOutcome(record, None)
            messages = messages + [
                {"role": "assistant", "content": response},
                {"role": "user", "content": REPAIR_TEMPLATE.format(diagnostics=messages_text)},
            ]

    diagnostics.extend(str(w) for w in validated.warnings)
    program_text = format_program(validated.program)
    try:
        result = execute(
            validated,
            inputs={name: input_waveforms[name] for name in session.allowed_inputs()},
            limits=limits,
            seeds=SeedPolicy(session.session_seed),
            round_index=round_index,
            registry=registry,
            table=table,
        )
    except ExecutionError as exc:
        record = RoundRecord(
            index=round_index,
            user_instruction=instruction,
            prompt_sent=prompt,
            llm_response=response,
            program_text=program_text,
            status="failed",
            repair_attempts=attempts,
            diagnostics=diagnostics,
            error=str(exc),
        )
        session.rounds.append(record)
        return RoundOutcome(record, None)

    final_step = result.trace.steps[-1]
    record = RoundRecord(
        index=round_index,
        user_instruction=instruction,
        prompt_sent=prompt,
        llm_response=response,
        program_text=program_text,
        status="repaired" if attempts else "ok",
        repair_attempts=attempts,
        diagnostics=diagnostics,
        trace=_trace_to_dicts(result, session.session_id),
        output_artifact_ids=[
            f"{session.session_id}:{i}" for i in final_step.output_artifact_ids if i
        ],
    )
    session.rounds.append(record)
    return RoundOutcome(record, result)
