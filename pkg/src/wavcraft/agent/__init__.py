"""Instruction orchestration: prompts, LLM clients, captions, sessions."""

from .captions import caption_inputs, caption_waveform
from .fewshot import FEW_SHOT_EXAMPLES, FewShotExample
from .llm import (
    LLMConfig,
    OpenAIChatClient,
    ScriptedLLM,
    client_from_env,
    client_from_spec,
    llm_chat,
    scripted_from_file,
)
from .orchestrator import MAX_REPAIR_ATTEMPTS, RoundOutcome, run_round
from .prompts import (
    FOLLOWUP_TEXT,
    PREAMBLE_HEADER,
    SCRIPTWRITING_SENTENCE,
    build_first_prompt,
    build_followup_prompt,
)
from .session import InputRecord, RoundRecord, SessionState

__all__ = [
    "FEW_SHOT_EXAMPLES",
    "FOLLOWUP_TEXT",
    "MAX_REPAIR_ATTEMPTS",
    "PREAMBLE_HEADER",
    "SCRIPTWRITING_SENTENCE",
    "FewShotExample",
    "InputRecord",
    "LLMConfig",
    "OpenAIChatClient",
    "RoundOutcome",
    "RoundRecord",
    "ScriptedLLM",
    "SessionState",
    "build_first_prompt",
    "build_followup_prompt",
    "caption_inputs",
    "caption_waveform",
    "client_from_env",
    "client_from_spec",
    "llm_chat",
    "run_round",
    "scripted_from_file",
]
