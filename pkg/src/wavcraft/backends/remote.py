"""HTTP client side of the backend wire protocol."""

from __future__ import annotations

import time

import requests

from ..errors import BackendError, ProtocolError
from .protocol import (
    GenerativeRequest,
    GenerativeResponse,
    request_to_json,
    response_from_json,
)

_BACKOFF_BASE_S = 0.1


def remote_call(
    endpoint: str,
    request: GenerativeRequest,
    timeout_s: float = 30.0,
    retries: int = 2,
) -> GenerativeResponse:
    """One POST per attempt with exponential backoff; the request id makes
    retried calls idempotent on a conforming server."""
    url = endpoint.rstrip("/") + f"/v1/ops/{request.op}"
    body = request_to_json(request)
    last_error: Exception | None = None
    for attempt in range(retries + 1):
        if attempt:
            time.sleep(_BACKOFF_BASE_S * (2 ** (attempt - 1)))
        try:
            http_response = requests.post(url, json=body, timeout=timeout_s)
        except requests.RequestException as exc:
            last_error = BackendError(f"{request.op} backend unreachable: {exc}", code="transport")
            continue
        if 200 <= http_response.status_code < 300:
            try:
                payload = http_response.json()
            except ValueError:
                raise ProtocolError(f"{request.op} backend returned non-JSON body") from None
            return response_from_json(payload)
        message = _decode_error(http_response)
        if 500 <= http_response.status_code < 600:
            last_error = BackendError(message, code="server_error")
            continue
        raise BackendError(message, code="bad_request")
    raise last_error if last_error else BackendError(f"{request.op} backend failed", code="transport")


def _decode_error(http_response) -> str:
    try:
        error = http_response.json().get("error", {})
        return f"{error.get('code', 'error')}: {error.get('message', http_response.text)}"
    except ValueError:
        return f"HTTP {http_response.status_code}: {http_response.text[:200]}"
