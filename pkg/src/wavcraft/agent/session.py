"""Multi-round co-creation session state and per-round records."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone


@dataclass
class InputRecord:
    name: str  # INPUT_WAVn, indices contiguous from 0
    artifact_id: str
    caption: str

    def to_dict(self) -> dict:
        return {"name": self.name, "artifact_id": self.artifact_id, "caption": self.caption}

    @classmethod
    def from_dict(cls, obj: dict) -> "InputRecord":
        return cls(name=obj["name"], artifact_id=obj["artifact_id"], caption=obj["caption"])


@dataclass
class RoundRecord:
    index: int
    user_instruction: str
    prompt_sent: str
    llm_response: str
    program_text: str | None
    status: str  # ok | repaired | failed
    repair_attempts: int = 0
    diagnostics: list[str] = field(default_factory=list)
    trace: list[dict] = field(default_factory=list)
    output_artifact_ids: list[str] = field(default_factory=list)
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "user_instruction": self.user_instruction,
            "prompt_sent": self.prompt_sent,
            "llm_response": self.llm_response,
            "program_text": self.program_text,
            "status": self.status,
            "repair_attempts": self.repair_attempts,
            "diagnostics": list(self.diagnostics),
            "trace": [dict(step) for step in self.trace],
            "output_artifact_ids": list(self.output_artifact_ids),
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "RoundRecord":
        return cls(
            index=obj["index"],
            user_instruction=obj["user_instruction"],
            prompt_sent=obj["prompt_sent"],
            llm_response=obj["llm_response"],
            program_text=obj.get("program_text"),
            status=obj["status"],
            repair_attempts=obj.get("repair_attempts", 0),
            diagnostics=list(obj.get("diagnostics", [])),
            trace=[dict(step) for step in obj.get("trace", [])],
            output_artifact_ids=list(obj.get("output_artifact_ids", [])),
            error=obj.get("error"),
        )


@dataclass
class SessionState:
    session_id: str
    session_seed: int
    created_at: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )
    inputs: list[InputRecord] = field(default_factory=list)
    rounds: list[RoundRecord] = field(default_factory=list)

    def next_input_name(self) -> str:
        return f"INPUT_WAV{len(self.inputs)}"

    def allowed_inputs(self) -> set[str]:
        return {record.name for record in self.inputs}

    def captions(self) -> dict[str, str]:
        return {record.name: record.caption for record in self.inputs}

    def instructions(self) -> list[str]:
        return [r.user_instruction for r in self.rounds]

    def to_dict(self, include_rounds: bool = True) -> dict:
        obj = {
            "session_id": self.session_id,
            "session_seed": self.session_seed,
            "created_at": self.created_at,
            "inputs": [record.to_dict() for record in self.inputs],
            "round_count": len(self.rounds),
        }
        if include_rounds:
            obj["rounds"] = [r.to_dict() for r in self.rounds]
        return obj

    @classmethod
    def from_dict(cls, obj: dict, rounds: list[RoundRecord] | None = None) -> "SessionState":
        return cls(
            session_id=obj["session_id"],
            session_seed=obj["session_seed"],
            created_at=obj.get("created_at", ""),
            inputs=[InputRecord.from_dict(i) for i in obj.get("inputs", [])],
            rounds=rounds
            if rounds is not None
            else [RoundRecord.from_dict(r) for r in obj.get("rounds", [])],
        )
