"""Operation signatures: the complete API surface the LLM may call.

Covers the basic DSP functions and the generative operations, including the
two slicing variants (CLIP by onset/offset, SPLIT by break points) and the
EXTRACT/DROP projections of TSS.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .ast import AUDIO, NUM, TEXT, SemType, list_of, tuple_of

REQUIRED = object()

SPEAKERS = ("Male1_En", "Male2_En", "Female1_En", "Female2_En")

MIX_ENTRY = tuple_of(AUDIO, NUM)


@dataclass(frozen=True)
class Param:
    name: str
    type: SemType
    default: Any = REQUIRED

    @property
    def required(self) -> bool:
        return self.default is REQUIRED


@dataclass(frozen=True)
class Signature:
    op: str
    params: tuple[Param, ...]
    results: tuple[SemType, ...]
    generative: bool = False
    # SPLIT's result arity depends on the break_points argument
    dynamic_arity_from: str | None = None

    @property
    def result_arity(self) -> int:
        return len(self.results)


class SignatureTable:
    """Registry of callable operations, looked up by name during validation
    and execution."""

    def __init__(self, signatures: list[Signature]):
        self._ops = {sig.op: sig for sig in signatures}

    def __contains__(self, op: str) -> bool:
        return op in self._ops

    def get(self, op: str) -> Signature | None:
        return self._ops.get(op)

    def __getitem__(self, op: str) -> Signature:
        return self._ops[op]

    def names(self) -> list[str]:
        return sorted(self._ops)

    def generative_ops(self) -> list[str]:
        return sorted(op for op, sig in self._ops.items() if sig.generative)


def _room_params() -> list[Param]:
    # defaults describe a plausible small room whose sampled geometry always
    # keeps source and mic strictly inside
    bounds = {
        "size_x": (4.0, 6.0), "size_y": (4.0, 6.0), "size_z": (2.8, 3.5),
        "absorption_value": (0.3, 0.6),
        "source_x": (1.8, 2.2), "source_y": (1.8, 2.2), "source_z": (1.2, 1.6),
        "mic_distance": (0.5, 1.2), "mic_azimuth": (0.0, 360.0),
        "mic_elevation": (-20.0, 30.0),
    }
    params = [Param("wav", AUDIO)]
    for name, (lo, hi) in bounds.items():
        params.append(Param(f"min_{name}", NUM, lo))
        params.append(Param(f"max_{name}", NUM, hi))
    return params


def default_signature_table() -> SignatureTable:
    p = Param
    return SignatureTable(
        [
            # basic processing
            Signature("LEN", (p("wav", AUDIO),), (NUM,)),
            Signature("MIX", (p("wavs", list_of(MIX_ENTRY)),), (AUDIO,)),
            Signature("CAT", (p("wavs", list_of(AUDIO)),), (AUDIO,)),
            Signature(
                "SPLIT",
                (p("wav", AUDIO), p("break_points", list_of(NUM))),
                (AUDIO, AUDIO),
                dynamic_arity_from="break_points",
            ),
            Signature("CLIP", (p("wav", AUDIO), p("onset", NUM), p("offset", NUM)), (AUDIO,)),
            Signature("ADJUST_VOL", (p("wav", AUDIO), p("volume", NUM)), (AUDIO,)),
            Signature(
                "LOW_PASS",
                (
                    p("wav", AUDIO),
                    p("min_cutoff_freq", NUM),
                    p("max_cutoff_freq", NUM),
                    p("min_rolloff", NUM, 12),
                    p("max_rolloff", NUM, 12),
                ),
                (AUDIO,),
            ),
            Signature(
                "HIGH_PASS",
                (
                    p("wav", AUDIO),
                    p("min_cutoff_freq", NUM),
                    p("max_cutoff_freq", NUM),
                    p("min_rolloff", NUM, 12),
                    p("max_rolloff", NUM, 12),
                ),
                (AUDIO,),
            ),
            Signature(
                "ADD_NOISE",
                (p("wav", AUDIO), p("min_snr_db", NUM), p("max_snr_db", NUM)),
                (AUDIO,),
            ),
            Signature("ADD_RIR", (p("wav", AUDIO), p("ir", AUDIO)), (AUDIO,)),
            Signature("ROOM_SIMULATE", tuple(_room_params()), (AUDIO,)),
            # generative
            Signature(
                "TTA",
                (p("text", TEXT), p("length", NUM, 5.0), p("volume", NUM, 0)),
                (AUDIO,),
                generative=True,
            ),
            Signature(
                "TTM",
                (
                    p("text", TEXT),
                    p("melody", AUDIO, None),
                    p("length", NUM, 10.0),
                    p("volume", NUM, 0),
                ),
                (AUDIO,),
                generative=True,
            ),
            Signature(
                "TTS",
                (p("text", TEXT), p("volume", NUM, 0), p("speaker", TEXT, SPEAKERS[0])),
                (AUDIO,),
                generative=True,
            ),
            Signature(
                "SR",
                (
                    p("wav", AUDIO),
                    p("ddim_steps", NUM, 50),
                    p("guidance_scale", NUM, 3.5),
                    p("seed", NUM, None),
                ),
                (AUDIO,),
                generative=True,
            ),
            Signature("TSS", (p("wav", AUDIO), p("text", TEXT)), (AUDIO, AUDIO), generative=True),
            Signature("EXTRACT", (p("wav", AUDIO), p("text", TEXT)), (AUDIO,), generative=True),
            Signature("DROP", (p("wav", AUDIO), p("text", TEXT)), (AUDIO,), generative=True),
            Signature(
                "INPAINT",
                (
                    p("wav", AUDIO),
                    p("text", TEXT),
                    p("onset", NUM),
                    p("offset", NUM),
                    p("duration", NUM, None),
                ),
                (AUDIO,),
                generative=True,
            ),
        ]
    )


@dataclass
class BoundCall:
    """A call with arguments resolved against its signature."""

    signature: Signature
    by_name: dict[str, Any]  # param name -> Expr (only those provided)
    errors: list[str] = field(default_factory=list)


def bind_call_args(sig: Signature, args, kwargs) -> BoundCall:
    """Match positional/keyword arguments to parameters, collecting problems
    as messages (the caller attaches line numbers)."""
    bound = BoundCall(sig, {})
    if len(args) > len(sig.params):
        bound.errors.append(
            f"{sig.op} takes at most {len(sig.params)} arguments, got {len(args)}"
        )
        return bound
    for param, expr in zip(sig.params, args):
        bound.by_name[param.name] = expr
    names = {param.name for param in sig.params}
    for key, expr in kwargs:
        if key not in names:
            bound.errors.append(f"{sig.op} has no parameter {key!r}")
        elif key in bound.by_name:
            bound.errors.append(f"{sig.op} got multiple values for {key!r}")
        else:
            bound.by_name[key] = expr
    for param in sig.params:
        if param.required and param.name not in bound.by_name:
            bound.errors.append(f"{sig.op} missing required argument {param.name!r}")
    return bound
