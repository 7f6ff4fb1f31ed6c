"""Reference HTTP server speaking the backend wire protocol.

Serves the local stubs over HTTP so any stub can be exercised through the
remote path (loopback conformance), plus an ECHO op that returns its inputs
unchanged for encoding round-trip tests. Also usable standalone via
`python -m wavcraft.backends.server --port N`.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from ..errors import BackendError, ProtocolError
from .protocol import (
    GenerativeResponse,
    error_to_json,
    request_from_json,
    response_to_json,
)
from .registry import DERIVED_OPS
from .stubs import STUB_HANDLERS, run_stub

_PATH_PREFIX = "/v1/ops/"


class _Handler(BaseHTTPRequestHandler):
    server_version = "WavCraftStubBackend/1.0"

    def log_message(self, *args):  # quiet by default
        if self.server.verbose:
            super().log_message(*args)

    def do_POST(self):
        if self.server.delay_s:
            time.sleep(self.server.delay_s)
        if not self.path.startswith(_PATH_PREFIX):
            self._send(404, error_to_json("not_found", f"unknown path {self.path}"))
            return
        op = self.path[len(_PATH_PREFIX):]
        try:
            length = int(self.headers.get("Content-Length", "0"))
            payload = json.loads(self.rfile.read(length) or b"{}")
            request = request_from_json(payload)
        except (ValueError, ProtocolError) as exc:
            self._send(400, error_to_json("bad_request", str(exc)))
            return
        if request.op != op:
            self._send(400, error_to_json("bad_request", "path op does not match body op"))
            return
        try:
            response = self._run(request)
        except BackendError as exc:
            status = 404 if exc.code == "unknown_op" else 400
            self._send(status, error_to_json(exc.code, str(exc)))
            return
        except Exception as exc:  # pragma: no cover - defensive
            self._send(500, error_to_json("internal", str(exc)))
            return
        self._send(200, response_to_json(response))

    def _run(self, request):
        if request.op == "ECHO":
            return GenerativeResponse(request.inputs, {"echo": True})
        if request.op in DERIVED_OPS:
            base_op, index = DERIVED_OPS[request.op]
            base = run_stub(replace(request, op=base_op))
            return GenerativeResponse((base.outputs[index],), dict(base.meta))
        if request.op not in STUB_HANDLERS:
            raise BackendError(f"unknown operation {request.op!r}", code="unknown_op")
        return run_stub(request)

    def _send(self, status: int, body: dict):
        data = json.dumps(body).encode("utf-8")
        try:
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)
        except (BrokenPipeError, ConnectionResetError):
            pass  # client gave up (e.g. timed out); nothing to answer


class StubBackendServer:
    """Threaded loopback server; use as a context manager in tests."""

    def __init__(self, host: str = "127.0.0.1", port: int = 0, delay_s: float = 0.0,
                 verbose: bool = False):
        self._httpd = ThreadingHTTPServer((host, port), _Handler)
        self._httpd.delay_s = delay_s
        self._httpd.verbose = verbose
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)

    @property
    def endpoint(self) -> str:
        host, port = self._httpd.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "StubBackendServer":
        self._thread.start()
        return self

    def stop(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()

    def __enter__(self) -> "StubBackendServer":
        return self.start()

    def __exit__(self, *exc) -> None:
        self.stop()


def main(argv=None) -> int:
    import argparse

    parser = argparse.ArgumentParser(description="Serve the stub backends over HTTP")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8081)
    args = parser.parse_args(argv)
    server = StubBackendServer(args.host, args.port, verbose=True).start()
    print(f"stub backends listening on {server.endpoint}")
    try:
        while True:
            time.sleep(3600)
    except KeyboardInterrupt:
        server.stop()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
