"""HTTP session service backing the browser UI and remote callers.

Endpoints (JSON unless noted):

    POST   /v1/sessions                    -> {"session_id"}
    POST   /v1/sessions/{id}/inputs        (raw WAV body) -> {"input_name", "caption"}
    POST   /v1/sessions/{id}/rounds        {"instruction"} -> RoundRecord
    GET    /v1/sessions/{id}               -> SessionState with rounds
    GET    /v1/sessions                    -> {"sessions": [...]}
    DELETE /v1/sessions/{id}               -> {"deleted": id}
    GET    /v1/artifacts/{artifact_id}     -> audio/wav bytes

Rounds are synchronous; concurrent rounds on one session are rejected with
409. Every non-2xx body is {"code", "message", "detail"}.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..agent import caption_waveform, run_round
from ..audio import WORKING_RATE, read_wav
from ..backends import BackendRegistry, registry_from_env
from ..engine import ResourceLimits
from ..errors import BackendError, WavCraftError, WavFormatError, WorkspaceError
from ..lang import SignatureTable, default_signature_table
from .workspace import Workspace


class ApiException(Exception):
    def __init__(self, status: int, code: str, message: str, detail: str = ""):
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)


@dataclass
class ServiceConfig:
    workspace: Workspace
    llm_client: Any = None
    registry: BackendRegistry = field(default_factory=registry_from_env)
    table: SignatureTable = field(default_factory=default_signature_table)
    limits: ResourceLimits = field(default_factory=ResourceLimits)
    default_session_seed: int | None = None


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="wavcraft", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    workspace = config.workspace
    locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
    locks_guard = threading.Lock()

    def session_lock(session_id: str) -> threading.Lock:
        with locks_guard:
            return locks[session_id]

    @app.exception_handler(ApiException)
    async def _api_error(_request: Request, exc: ApiException):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "detail": exc.detail},
        )

    def _load_session(session_id: str):
        if not workspace.session_exists(session_id):
            raise ApiException(404, "not_found", f"session {session_id} not found")
        try:
            return workspace.load_session(session_id)
        except WorkspaceError as exc:
            raise ApiException(500, "backend_error", "failed to load session", str(exc))

    @app.post("/v1/sessions")
    def create_session(body: dict | None = None) -> dict:
        seed = (body or {}).get("seed", config.default_session_seed)
        if seed is None:
            import secrets

            seed = secrets.randbits(63)
        state = workspace.create_session(int(seed))
        return {"session_id": state.session_id, "session_seed": state.session_seed}

    @app.post("/v1/sessions/{session_id}/inputs")
    async def upload_input(session_id: str, request: Request) -> dict:
        state = _load_session(session_id)
        data = await request.body()
        if not data:
            raise ApiException(400, "bad_request", "empty upload body")
        try:
            wav = read_wav(data, target_rate=WORKING_RATE)
        except WavFormatError as exc:
            raise ApiException(400, "bad_request", "invalid WAV payload", str(exc))
        caption = caption_waveform(wav, config.registry)
        with session_lock(session_id):
            name, artifact_id = workspace.add_input(state, data, caption)
        return {"input_name": name, "caption": caption, "artifact_id": artifact_id}

    @app.post("/v1/sessions/{session_id}/rounds")
    def post_round(session_id: str, body: dict) -> dict:
        instruction = (body or {}).get("instruction", "")
        if not isinstance(instruction, str) or not instruction.strip():
            raise ApiException(400, "bad_request", "missing 'instruction'")
        if config.llm_client is None:
            raise ApiException(500, "llm_error", "no LLM client configured")
        lock = session_lock(session_id)
        if not lock.acquire(blocking=False):
            raise ApiException(
                409, "conflict", f"a round is already running for session {session_id}"
            )
        try:
            state = _load_session(session_id)
            inputs = workspace.load_input_waveforms(state)
            try:
                outcome = run_round(
                    state,
                    instruction.strip(),
                    config.llm_client,
                    inputs,
                    registry=config.registry,
                    table=config.table,
                    limits=config.limits,
                )
            except BackendError as exc:
                raise ApiException(502, "llm_error", "LLM call failed", str(exc))
            if outcome.result is not None:
                store = outcome.result.artifacts
                for local_id in store.ids():
                    workspace.save_artifact(
                        session_id,
                        local_id,
                        store.get(local_id),
                        limit=local_id.endswith("-OUTPUT_WAV"),
                    )
            workspace.save_round(state, outcome.record)
            return outcome.record.to_dict()
        except WavCraftError as exc:
            raise ApiException(500, "backend_error", "round failed", str(exc))
        finally:
            lock.release()

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _load_session(session_id).to_dict(include_rounds=True)

    @app.get("/v1/sessions")
    def list_sessions() -> dict:
        return {"sessions": workspace.list_sessions()}

    @app.delete("/v1/sessions/{session_id}")
    def delete_session(session_id: str) -> dict:
        if not workspace.session_exists(session_id):
            raise ApiException(404, "not_found", f"session {session_id} not found")
        workspace.delete_session(session_id)
        return {"deleted": session_id}

    @app.get("/v1/artifacts/{artifact_id}")
    def get_artifact(artifact_id: str) -> Response:
        try:
            data = workspace.read_artifact_bytes(artifact_id)
        except WorkspaceError as exc:
            raise ApiException(404, "not_found", str(exc))
        return Response(content=data, media_type="audio/wav")

    return app


def run_server(config: ServiceConfig, host: str = "127.0.0.1", port: int = 8080) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=host, port=port, log_level="warning")
