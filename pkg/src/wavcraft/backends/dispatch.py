"""Uniform dispatch for generative operations.

Routes a request to its registered stub or remote backend, enforces result
arity and sample-rate expectations, and applies the volume rule: audio from
TTA/TTS/TTM is normalized to REF_LUFS plus the requested volume offset, so
`volume=4` lands at -19 LUFS regardless of which model produced it.
Separated audio (TSS/EXTRACT/DROP) is never renormalized.
"""

from __future__ import annotations

from dataclasses import replace

from ..audio import SR_OUTPUT_RATE, WORKING_RATE, measure_lufs, normalize_lufs, BELOW_GATE
from ..errors import AudioError, BackendError, ProtocolError
from .protocol import GenerativeRequest, GenerativeResponse
from .registry import DERIVED_OPS, RESULT_ARITY, BackendRegistry
from .remote import remote_call
from .stubs import run_stub

REF_LUFS = -23.0

# ops whose volume parameter is an offset in LU from REF_LUFS
VOLUME_RULED_OPS = ("TTA", "TTS", "TTM")


def dispatch(request: GenerativeRequest, registry: BackendRegistry) -> GenerativeResponse:
    if request.op in DERIVED_OPS:
        base_op, index = DERIVED_OPS[request.op]
        base = dispatch(replace(request, op=base_op), registry)
        return GenerativeResponse((base.outputs[index],), dict(base.meta))

    descriptor = registry.descriptor(request.op)
    request = _with_defaults(request)
    _check_request(request)
    if descriptor.kind == "stub":
        response = run_stub(request)
        response = GenerativeResponse(response.outputs, {**response.meta, "backend": "stub"})
    else:
        response = remote_call(
            descriptor.endpoint, request, timeout_s=descriptor.timeout_s, retries=descriptor.retries
        )
        response = GenerativeResponse(
            response.outputs, {**response.meta, "backend": descriptor.endpoint}
        )

    _check_arity(request, response)
    _check_rates(request, response)
    if request.op in VOLUME_RULED_OPS:
        response = _apply_volume_rule(request, response)
    return response


def _with_defaults(request: GenerativeRequest) -> GenerativeRequest:
    params = dict(request.params)
    params.setdefault("seed", 0)
    params.setdefault("sample_rate", WORKING_RATE)
    return replace(request, params=params)


def _check_request(request: GenerativeRequest) -> None:
    if request.op == "INPAINT":
        if not request.inputs:
            raise BackendError("INPAINT requires one input waveform", code="bad_request")
        duration = request.param("duration")
        input_duration = request.inputs[0].duration_seconds
        if duration is not None:
            tolerance = 0.5 / request.inputs[0].sample_rate
            if abs(float(duration) - input_duration) > tolerance:
                raise BackendError(
                    f"INPAINT duration {float(duration):.6f} s must equal the input duration "
                    f"{input_duration:.6f} s",
                    code="bad_request",
                )


def _check_arity(request: GenerativeRequest, response: GenerativeResponse) -> None:
    expected = RESULT_ARITY.get(request.op)
    if expected is not None and len(response.outputs) != expected:
        raise ProtocolError(
            f"{request.op} backend returned {len(response.outputs)} outputs, expected {expected}"
        )
    if request.op == "CAPTION" and "caption" not in response.meta:
        raise ProtocolError("CAPTION backend returned no caption")


def _expected_rate(request: GenerativeRequest) -> int | None:
    if request.op == "SR":
        return SR_OUTPUT_RATE
    if request.inputs:
        return request.inputs[0].sample_rate
    return int(request.param("sample_rate", WORKING_RATE))


def _check_rates(request: GenerativeRequest, response: GenerativeResponse) -> None:
    expected = _expected_rate(request)
    for wav in response.outputs:
        if wav.sample_rate != expected:
            raise ProtocolError(
                f"{request.op} backend returned sample rate {wav.sample_rate}, expected {expected}"
            )


def _apply_volume_rule(
    request: GenerativeRequest, response: GenerativeResponse
) -> GenerativeResponse:
    target = REF_LUFS + float(request.param("volume", 0) or 0)
    normalized = []
    for wav in response.outputs:
        try:
            if wav.duration_seconds >= 0.4 and measure_lufs(wav) != BELOW_GATE:
                wav = normalize_lufs(wav, target)
        except AudioError:
            pass  # too short or below gate: keep the synthesized level
        normalized.append(wav)
    return GenerativeResponse(tuple(normalized), response.meta)
