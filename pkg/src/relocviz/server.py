"""Local HTTP JSON service exposing scene compilation to the companion UI.

The service is stateless: the dataset is read-only after startup and every
piece of analyst state (window, threshold, selection, armed building)
travels in query parameters, so concurrent clients never interact.

Endpoints:
    GET /api/meta                                    dataset description
    GET /api/scene?from&to&threshold&selected&armed  compiled scene JSON
    GET /api/summary/<id>?from&to                    one card payload
    GET /<path>                                      static UI assets
"""

from __future__ import annotations

import json
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import engine
from .arcs import ArcParams
from .dataset import Dataset
from .engine import TimeWindow
from .scene import ViewState, ViewStateError, compile_scene, scene_to_json
from .styling import StyleParams


class BadRequest(ValueError):
    pass


def _int_param(params: dict, name: str, default: int | None) -> int | None:
    values = params.get(name)
    if not values:
        return default
    try:
        return int(values[0])
    except ValueError:
        raise BadRequest(f"parameter {name!r} must be an integer") from None


def parse_view_state(query: str, ds: Dataset) -> ViewState:
    """Build a ViewState from /api/scene query parameters."""
    params = parse_qs(query, keep_blank_values=True)
    t = ds.series.period_count
    lo = _int_param(params, "from", 0)
    hi = _int_param(params, "to", t - 1)
    threshold = _int_param(params, "threshold", 1)
    if lo < 0 or hi < lo or hi >= t:
        raise BadRequest("window out of range")
    if threshold < 1:
        raise BadRequest("threshold must be >= 1")

    selected: frozenset[int] = frozenset()
    raw = params.get("selected", [""])[0]
    if raw:
        try:
            selected = frozenset(int(tok) for tok in raw.split(","))
        except ValueError:
            raise BadRequest("parameter 'selected' must be comma-separated ids") from None
    armed = _int_param(params, "armed", None)

    n = ds.series.building_count
    for i in sorted(selected) + ([armed] if armed is not None else []):
        if not 0 <= i < n:
            raise BadRequest(f"unknown building id {i}")
    return ViewState(TimeWindow(lo, hi), threshold, selected, armed)


def _meta_dict(ds: Dataset) -> dict:
    return {
        "periods": list(ds.series.period_labels),
        "buildings": [
            {
                "id": b.id,
                "name": b.name,
                "color": b.color.to_hex(),
                "anchor": [float(b.anchor[0]), float(b.anchor[1])],
            }
            for b in ds.buildings
        ],
        "canvas": {"w": ds.width, "h": ds.height},
    }


def make_handler(
    ds: Dataset,
    style: StyleParams,
    arc_params: ArcParams,
    static_dir: Path | None,
):
    meta_body = json.dumps(_meta_dict(ds), sort_keys=True, separators=(",", ":"))

    class Handler(BaseHTTPRequestHandler):
        server_version = "relocviz"

        def log_message(self, fmt, *args):  # quiet by default
            pass

        def _send(self, status: int, body: bytes, content_type: str) -> None:
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _send_json(self, status: int, text: str) -> None:
            self._send(status, text.encode("utf-8"), "application/json")

        def _send_error_json(self, status: int, message: str) -> None:
            self._send_json(status, json.dumps({"error": message}))

        def do_GET(self) -> None:  # noqa: N802 (http.server API)
            url = urlparse(self.path)
            try:
                if url.path == "/api/meta":
                    self._send_json(200, meta_body)
                elif url.path == "/api/scene":
                    vs = parse_view_state(url.query, ds)
                    scene = compile_scene(ds, vs, style, arc_params)
                    self._send_json(200, scene_to_json(scene))
                elif url.path.startswith("/api/summary/"):
                    self._summary(url)
                elif url.path.startswith("/api/"):
                    self._send_error_json(404, "not found")
                else:
                    self._static(url.path)
            except (BadRequest, ViewStateError) as exc:
                self._send_error_json(400, str(exc))

        def _summary(self, url) -> None:
            tail = url.path[len("/api/summary/") :]
            try:
                building = int(tail)
            except ValueError:
                raise BadRequest("summary id must be an integer") from None
            n = ds.series.building_count
            if not 0 <= building < n:
                raise BadRequest(f"unknown building id {building}")
            params = parse_qs(url.query, keep_blank_values=True)
            t = ds.series.period_count
            lo = _int_param(params, "from", 0)
            hi = _int_param(params, "to", t - 1)
            if lo < 0 or hi < lo or hi >= t:
                raise BadRequest("window out of range")
            agg = engine.aggregate(ds.series, TimeWindow(lo, hi))
            s = engine.building_summary(agg, building)
            body = {
                "building": s.building,
                "out": s.out_total,
                "in": s.in_total,
                "net": s.net,
                "internal": s.internal,
                "partners": [{"id": p[0], "out": p[1], "in": p[2]} for p in s.partners],
            }
            self._send_json(200, json.dumps(body, sort_keys=True, separators=(",", ":")))

        def _static(self, path: str) -> None:
            if static_dir is None:
                if path == "/":
                    self._send(
                        200,
                        b"<!doctype html><title>relocviz</title>"
                        b"<p>UI assets not configured; the JSON API lives under /api/.</p>",
                        "text/html; charset=utf-8",
                    )
                else:
                    self._send_error_json(404, "not found")
                return
            rel = path.lstrip("/") or "index.html"
            target = (static_dir / rel).resolve()
            root = static_dir.resolve()
            if root not in target.parents and target != root:
                self._send_error_json(404, "not found")
                return
            if target.is_dir():
                target = target / "index.html"
            if not target.is_file():
                self._send_error_json(404, "not found")
                return
            ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
            self._send(200, target.read_bytes(), ctype)

    return Handler


class SceneServer:
    """Threaded HTTP server wrapper; usable from tests via start()/stop()."""

    def __init__(
        self,
        ds: Dataset,
        style: StyleParams = StyleParams(),
        arc_params: ArcParams = ArcParams(),
        static_dir: Path | None = None,
        host: str = "127.0.0.1",
        port: int = 8080,
    ):
        handler = make_handler(ds, style, arc_params, static_dir)
        self.httpd = ThreadingHTTPServer((host, port), handler)
        self._thread: threading.Thread | None = None

    @property
    def port(self) -> int:
        return self.httpd.server_address[1]

    def start(self) -> None:
        self._thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        self._thread.start()

    def stop(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
        if self._thread is not None:
            self._thread.join()

    def serve_forever(self) -> None:
        self.httpd.serve_forever()
