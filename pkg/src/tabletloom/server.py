"""Local HTTP bridge for the live-coding UI.

Stateless JSON-over-HTTP service sharing the exact simulate code path
with the CLI: the POST /simulate response body is byte-identical to
`tabletloom simulate` stdout for the same plan text.

  POST /simulate  plan text -> 200 drawdown JSON
                             | 400 [{"line","col","code","msg"}, ...]
  GET  /examples  -> [{"id","title","source"}, ...]
  GET  /health    -> 200

Permissive CORS headers for local development.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .bandio import load_catalog
from .errors import DomainError
from .loom import simulate
from .plan import compile_plan
from . import bandio


def simulate_bytes(source: str) -> bytes:
    """The one simulate code path: plan text -> canonical drawdown JSON."""
    flat = compile_plan(source)
    return bandio.export_drawdown(simulate(flat))


def diagnostics_json(exc: DomainError) -> bytes:
    diags = exc.details.get("diagnostics")
    if diags:
        items = [{"line": d.line, "col": d.col, "code": d.code, "msg": d.message}
                 for d in diags]
    else:
        items = [{"line": 1, "col": 1, "code": exc.code, "msg": exc.message}]
    return json.dumps(items, sort_keys=True, separators=(",", ":")).encode("utf-8")


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, body: bytes, content_type="application/json"):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self):
        self._send(204, b"")

    def do_GET(self):
        if self.path == "/health":
            self._send(200, b'{"status":"ok"}')
        elif self.path == "/examples":
            entries, _ = load_catalog()
            body = json.dumps(
                [{"id": e.id, "title": e.title, "source": e.source} for e in entries],
                sort_keys=True, separators=(",", ":")).encode("utf-8")
            self._send(200, body)
        else:
            self._send(404, b'{"error":"not found"}')

    def do_POST(self):
        if self.path != "/simulate":
            self._send(404, b'{"error":"not found"}')
            return
        length = int(self.headers.get("Content-Length", "0"))
        source = self.rfile.read(length).decode("utf-8", errors="replace")
        try:
            self._send(200, simulate_bytes(source))
        except DomainError as exc:
            self._send(400, diagnostics_json(exc))


def make_server(port: int = 0) -> ThreadingHTTPServer:
    return ThreadingHTTPServer(("127.0.0.1", port), _Handler)


def serve(port: int = 8337):
    server = make_server(port)
    print(f"tabletloom service on http://127.0.0.1:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
