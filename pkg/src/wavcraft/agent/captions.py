"""Input captioning through the backend gateway (remote captioner when
configured, deterministic stub otherwise)."""

from __future__ import annotations

import logging

from ..audio import Waveform
from ..backends import BackendRegistry, GenerativeRequest, dispatch
from ..backends.stubs import caption_text
from ..errors import WavCraftError

logger = logging.getLogger(__name__)


def caption_waveform(wav: Waveform, registry: BackendRegistry) -> str:
    try:
        response = dispatch(GenerativeRequest(op="CAPTION", inputs=(wav,)), registry)
        return str(response.meta["caption"])
    except WavCraftError as exc:
        logger.warning("captioner failed (%s); falling back to the local stub", exc)
        return caption_text(wav)


def caption_inputs(
    inputs: dict[str, Waveform], registry: BackendRegistry
) -> dict[str, str]:
    """One caption per input, keyed by INPUT_WAVn; empty inputs yield an
    empty map (pure text-to-audio rounds need no context)."""
    return {name: caption_waveform(wav, registry) for name, wav in inputs.items()}
