"""Prompt assembly for the audio programmer.

The first-round prompt is the tool list plus the few-shot examples, then one
caption line per input, then the instruction block ending in `Code:`.
Follow-up rounds repeat the same layout with the accumulated instruction
history and the follow-up rule, so regenerated programs always start from
the original inputs. Both builders are pure functions of their arguments.
"""

from __future__ import annotations

from .fewshot import FEW_SHOT_EXAMPLES

PREAMBLE_HEADER = (
    "You are an professional audio editor. Try to follow the instruction I give "
    "using several predefined tools:"
)

TOOL_LINES = (
    "LEN(wav)  # returns the duration of `wav` in seconds",
    "MIX(wavs: list[tuple])  # returns the mixture of the input `wavs`",
    "CAT(wavs: list)  # returns the concatenated wav using input `wavs`",
    "SPLIT(wav, break_points=list[float])  # returns the split wavs using `break_points`",
    "ADJUST_VOL(wav, volume: int)  # returns the adjusted wav by `volume`",
    "TTA(text: str, length: float, volume: int)  # returns a generated audio conditioned on `text`",
    "TTM(text: str, melody, length: float, volume: int)  # returns a generated music conditioned on `text` and (optional) `melody`",
    "TTS(text: str, volume: int)  # returns a generated speech conditioned on `text` and `speaker`. `speaker` should be in ['Male1_En', 'Male2_En', 'Female1_En', 'Female2_En']",
    "SR(wav, ddim_steps: int, guidance_scale: float, seed: int)  # Returns a wav upsampled to 48kHz",
    "TSS(wav, text: str)  # returns foreground and background wav conditioned on `text`",
    "ADD_NOISE(wav, min_snr_db: float, max_snr_db: float)  # returns a generated audio mixed with gaussian noise",
    "LOW_PASS(wav, min_cutoff_freq: float, max_cutoff_freq: float, min_rolloff: int, max_rolloff: int)  # returns a generated audio processed by low pass filter",
    "HIGH_PASS(wav, min_cutoff_freq: float, max_cutoff_freq: float, min_rolloff: int, max_rolloff: int)  # returns a generated audio processed by high pass filter",
    "ADD_RIR(wav, ir)  # returns a generated audio mixed with a given room impulse response",
    "ROOM_SIMULATE(wav, min_size_x: float, max_size_x: float, min_size_y: float, max_size_y: float, min_size_z: float, max_size_z: float, min_absorption_value: float, max_absorption_value: float, min_source_x: float, max_source_x: float, min_source_y: float, max_source_y: float, min_source_z: float, max_source_z: float, min_mic_distance: float, max_mic_distance: float, min_mic_azimuth: float, max_mic_azimuth: float, min_mic_elevation: float, max_mic_elevation: float)  # returns a synthesized audio by mixing the input `wav` with a room-specific synthesized impulse response",
    "INPAINT(wav, text: str, onset: float, offset: float, duration: float)  # returns a fixed audio where the part between `onset` and `offset` has been inpainted",
)

FOLLOWUP_TEXT = (
    "Regenerate the code by appending the new instruction to the previous instructions. "
    "The code must start with the provided audio (e.g., INPUT_WAV0) and cannot take "
    "the output from previous phase (i.e., `OUTPUT_WAV`) as a known input. "
    "The new instruction is:"
)

SCRIPTWRITING_SENTENCE = (
    "Before the code, write an audio script: a short numbered plan of the scenes "
    "that fulfill the outline, as comment lines. Then generate the code that realizes it."
)


def _preamble() -> str:
    sections = [PREAMBLE_HEADER]
    sections.extend(TOOL_LINES)
    sections.append("")
    sections.append("I will give you several examples:")
    for example in FEW_SHOT_EXAMPLES:
        sections.append("Instruction:")
        sections.append(example.instruction)
        sections.append("Code:")
        sections.append(example.code)
        sections.append("")
    return "\n".join(sections)


def _audio_context(captions: dict[str, str]) -> list[str]:
    return [f"{name}: {caption}" for name, caption in captions.items()]


def build_first_prompt(
    captions: dict[str, str], instruction: str, scriptwriting: bool = False
) -> str:
    """Assemble the round-one prompt; byte-stable for fixed arguments."""
    lines = [_preamble()]
    lines.extend(_audio_context(captions))
    if scriptwriting:
        lines.append(SCRIPTWRITING_SENTENCE)
    lines.append("Instruction:")
    lines.append(instruction)
    lines.append("Code:")
    return "\n".join(lines)


def build_followup_prompt(
    captions: dict[str, str],
    previous_instructions: list[str],
    new_instruction: str,
    scriptwriting: bool = False,
) -> str:
    """Follow-up prompt: prior instructions (never prior code) plus the rule
    that the program must restart from the original inputs."""
    if not previous_instructions:
        raise ValueError("follow-up prompts need at least one previous instruction")
    lines = [_preamble()]
    lines.extend(_audio_context(captions))
    if scriptwriting:
        lines.append(SCRIPTWRITING_SENTENCE)
    lines.append("Previous instructions:")
    for i, instruction in enumerate(previous_instructions, start=1):
        lines.append(f"{i}. {instruction}")
    lines.append(FOLLOWUP_TEXT)
    lines.append(new_instruction)
    lines.append("Code:")
    return "\n".join(lines)
