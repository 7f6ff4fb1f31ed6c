"""Wire protocol for generative backends.

HTTP POST {endpoint}/v1/ops/{OP_NAME} with a JSON body; audio travels as
base64-encoded little-endian 32-bit float samples. Errors come back as
{"error": {"code", "message"}} with a non-2xx status.
"""

from __future__ import annotations

import base64
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import ProtocolError
from ..audio import Waveform

ENCODING = "f32le"


@dataclass(frozen=True)
class GenerativeRequest:
    op: str
    text: str | None = None
    params: dict[str, Any] = field(default_factory=dict)
    inputs: tuple[Waveform, ...] = ()
    request_id: str = ""

    @property
    def seed(self) -> int:
        return int(self.params.get("seed", 0))

    def param(self, name: str, default=None):
        return self.params.get(name, default)


@dataclass(frozen=True)
class GenerativeResponse:
    outputs: tuple[Waveform, ...]
    meta: dict[str, Any] = field(default_factory=dict)


def waveform_to_json(wav: Waveform) -> dict:
    return {
        "sample_rate": wav.sample_rate,
        "encoding": ENCODING,
        "data_b64": base64.b64encode(wav.samples.astype("<f4").tobytes()).decode("ascii"),
    }


def waveform_from_json(obj: Any) -> Waveform:
    if not isinstance(obj, dict):
        raise ProtocolError(f"audio object must be a JSON object, got {type(obj).__name__}")
    if obj.get("encoding") != ENCODING:
        raise ProtocolError(f"unsupported encoding {obj.get('encoding')!r}")
    rate = obj.get("sample_rate")
    if not isinstance(rate, int) or rate <= 0:
        raise ProtocolError(f"invalid sample_rate {rate!r}")
    try:
        raw = base64.b64decode(obj.get("data_b64", ""), validate=True)
    except Exception as exc:
        raise ProtocolError(f"invalid base64 audio payload: {exc}") from None
    if len(raw) % 4:
        raise ProtocolError("audio payload length is not a multiple of 4 bytes")
    samples = np.frombuffer(raw, dtype="<f4").astype(np.float64)
    return Waveform(samples, rate)


def request_to_json(request: GenerativeRequest) -> dict:
    return {
        "request_id": request.request_id,
        "op": request.op,
        "text": request.text,
        "params": dict(request.params),
        "inputs": [waveform_to_json(w) for w in request.inputs],
    }


def request_from_json(obj: Any) -> GenerativeRequest:
    if not isinstance(obj, dict):
        raise ProtocolError("request body must be a JSON object")
    op = obj.get("op")
    if not isinstance(op, str) or not op:
        raise ProtocolError("request is missing 'op'")
    text = obj.get("text")
    if text is not None and not isinstance(text, str):
        raise ProtocolError("'text' must be a string or null")
    params = obj.get("params") or {}
    if not isinstance(params, dict):
        raise ProtocolError("'params' must be an object")
    inputs = obj.get("inputs") or []
    if not isinstance(inputs, list):
        raise ProtocolError("'inputs' must be a list")
    return GenerativeRequest(
        op=op,
        text=text,
        params=params,
        inputs=tuple(waveform_from_json(w) for w in inputs),
        request_id=str(obj.get("request_id") or ""),
    )


def response_to_json(response: GenerativeResponse) -> dict:
    return {
        "outputs": [waveform_to_json(w) for w in response.outputs],
        "meta": dict(response.meta),
    }


def response_from_json(obj: Any) -> GenerativeResponse:
    if not isinstance(obj, dict):
        raise ProtocolError("response body must be a JSON object")
    outputs = obj.get("outputs")
    if not isinstance(outputs, list):
        raise ProtocolError("response is missing 'outputs'")
    meta = obj.get("meta") or {}
    if not isinstance(meta, dict):
        raise ProtocolError("'meta' must be an object")
    return GenerativeResponse(tuple(waveform_from_json(w) for w in outputs), meta)


def error_to_json(code: str, message: str) -> dict:
    return {"error": {"code": code, "message": message}}
