"""Shared fixtures: an in-process mock JSON backend and toy resources."""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest


class MockJsonServer:
    """Tiny JSON-over-HTTP server for exercising the remote oracle contracts.

    Handlers are registered per (method, path) and receive the parsed JSON
    body; they return (status, payload). Requests are recorded for
    query-accounting assertions.
    """

    def __init__(self):
        self.handlers = {}
        self.requests = []
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def _serve(self, method):
                length = int(self.headers.get("Content-Length") or 0)
                body = self.rfile.read(length) if length else b""
                payload = json.loads(body) if body else None
                outer.requests.append((method, self.path, payload))
                handler = outer.handlers.get((method, self.path))
                if handler is None:
                    self.send_response(404)
                    self.end_headers()
                    return
                status, response = handler(payload)
                data = json.dumps(response).encode()
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def do_POST(self):
                self._serve("POST")

            def do_GET(self):
                self._serve("GET")

            def log_message(self, *args):
                pass

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    @property
    def url(self) -> str:
        host, port = self.server.server_address
        return f"http://{host}:{port}"

    def on(self, method, path, handler):
        self.handlers[(method, path)] = handler
        return self

    def close(self):
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def mock_server():
    server = MockJsonServer()
    yield server
    server.close()


@pytest.fixture
def toy_vectors_file(tmp_path):
    """Three near-parallel day-words plus an orthogonal distractor."""
    path = tmp_path / "vectors.txt"
    path.write_text(
        "pretty 1.0 0.0 0.0\n"
        "ugly 0.8 0.6 0.0\n"
        "day 0.0 0.0 1.0\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture
def negation_lexicon():
    return frozenset({"nothing", "not", "isn't", "don't", "never", "no"})
