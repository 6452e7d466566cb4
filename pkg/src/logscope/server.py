"""Read-only HTTP service for the exploration UI.

Serves the export JSON at ``/api/graph``, keyword search at
``/api/search?keyword=...`` (same engine as the CLI), and optional static
UI assets from a bundle directory.  All data is loaded once at startup and
never mutated, so concurrent reads need no locking.
"""

from __future__ import annotations

import json
from functools import partial
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import search
from .errors import EmptyQuery
from .graph import CausalGraph, graph_from_export


class GraphHandler(SimpleHTTPRequestHandler):
    graph: CausalGraph
    export_bytes: bytes
    bundle_dir: str | None

    def __init__(self, *args, graph: CausalGraph, export_bytes: bytes, bundle_dir: str | None, **kwargs):
        self.graph = graph
        self.export_bytes = export_bytes
        self.bundle_dir = bundle_dir
        if bundle_dir is not None:
            kwargs["directory"] = bundle_dir
        super().__init__(*args, **kwargs)

    def log_message(self, format: str, *args) -> None:  # quiet by default
        pass

    def do_GET(self) -> None:
        parsed = urlparse(self.path)
        if parsed.path == "/api/graph":
            self._send_bytes(self.export_bytes, "application/json")
            return
        if parsed.path == "/api/search":
            self._handle_search(parse_qs(parsed.query))
            return
        if parsed.path.startswith("/api/"):
            self.send_error(404, "unknown API path")
            return
        if self.bundle_dir is None:
            self.send_error(404, "no UI bundle configured")
            return
        super().do_GET()

    def _handle_search(self, params: dict[str, list[str]]) -> None:
        keyword = params.get("keyword", [""])[0]
        mode = params.get("mode", [search.ACTION_EXACT])[0]
        try:
            ids = sorted(search.keyword_search(self.graph, keyword, mode=mode))
        except (EmptyQuery, ValueError) as exc:
            self._send_bytes(
                json.dumps({"error": str(exc)}).encode("utf-8"), "application/json", status=400
            )
            return
        self._send_bytes(json.dumps(ids).encode("utf-8"), "application/json")

    def _send_bytes(self, payload: bytes, content_type: str, status: int = 200) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)


def make_server(
    data_file: str | Path,
    bundle_dir: str | Path | None = None,
    host: str = "127.0.0.1",
    port: int = 8000,
) -> ThreadingHTTPServer:
    """Build (but do not start) the service; raises if inputs are missing."""
    data_path = Path(data_file)
    export_bytes = data_path.read_bytes()
    graph = graph_from_export(json.loads(export_bytes))
    if bundle_dir is not None:
        bundle_path = Path(bundle_dir)
        if not bundle_path.is_dir():
            raise FileNotFoundError(f"UI bundle directory not found: {bundle_path}")
        bundle_dir = str(bundle_path)
    handler = partial(
        GraphHandler, graph=graph, export_bytes=export_bytes, bundle_dir=bundle_dir
    )
    return ThreadingHTTPServer((host, port), handler)


def serve(
    data_file: str | Path,
    bundle_dir: str | Path | None = None,
    host: str = "127.0.0.1",
    port: int = 8000,
) -> None:
    """Run the service until interrupted."""
    httpd = make_server(data_file, bundle_dir=bundle_dir, host=host, port=port)
    try:
        httpd.serve_forever()
    finally:
        httpd.server_close()
