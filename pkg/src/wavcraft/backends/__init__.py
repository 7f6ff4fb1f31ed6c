"""Generative backend gateway: wire protocol, stubs, registry, dispatch."""

from .dispatch import REF_LUFS, VOLUME_RULED_OPS, dispatch
from .protocol import (
    ENCODING,
    GenerativeRequest,
    GenerativeResponse,
    error_to_json,
    request_from_json,
    request_to_json,
    response_from_json,
    response_to_json,
    waveform_from_json,
    waveform_to_json,
)
from .registry import (
    ENV_PREFIX,
    GATEWAY_OPS,
    RESULT_ARITY,
    BackendDescriptor,
    BackendRegistry,
    registry_from_env,
    stub_registry,
)
from .remote import remote_call
from .server import StubBackendServer
from .stubs import band_project, caption_text, run_stub, text_band

__all__ = [
    "ENCODING",
    "ENV_PREFIX",
    "GATEWAY_OPS",
    "REF_LUFS",
    "RESULT_ARITY",
    "VOLUME_RULED_OPS",
    "BackendDescriptor",
    "BackendRegistry",
    "GenerativeRequest",
    "GenerativeResponse",
    "StubBackendServer",
    "band_project",
    "caption_text",
    "dispatch",
    "error_to_json",
    "registry_from_env",
    "remote_call",
    "request_from_json",
    "request_to_json",
    "response_from_json",
    "response_to_json",
    "run_stub",
    "stub_registry",
    "text_band",
    "waveform_from_json",
    "waveform_to_json",
]
