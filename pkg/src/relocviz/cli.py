"""Command-line entry points: vectorize, validate, render, serve."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dataset as dio
from .config import ConfigError, load_params
from .engine import TimeWindow
from .raster import PpmError, parse_ppm
from .scene import ViewState, ViewStateError, compile_scene, scene_to_svg
from .server import SceneServer
from .vectorize import vectorize


def _add_dataset_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("polygons", help="polygon file (vectorized map)")
    p.add_argument("colormap", help="color-to-building map file")
    p.add_argument("relocations", help="periodic relocation matrix file")


def _add_param_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value file with style/arc overrides")
    p.add_argument(
        "--set",
        dest="sets",
        action="append",
        metavar="KEY=VALUE",
        help="override one style/arc parameter (repeatable)",
    )


def _load_dataset(args) -> dio.Dataset:
    paths = {
        "polygons": args.polygons,
        "colormap": args.colormap,
        "relocations": args.relocations,
    }
    texts = {}
    for kind, path in paths.items():
        try:
            texts[kind] = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise dio.DatasetError([f"cannot read {kind} file {path}: {exc}"]) from None
    polys = dio.parse_polygon_file(texts["polygons"])
    cmap = dio.parse_color_map(texts["colormap"])
    series = dio.parse_relocation_file(texts["relocations"])
    return dio.load_dataset(polys, cmap, series)


def cmd_vectorize(args) -> int:
    try:
        data = Path(args.input).read_bytes()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    try:
        img = parse_ppm(data)
    except PpmError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return 2
    polys = vectorize(img, args.snap, args.min_area)
    Path(args.output).write_text(dio.format_polygon_file(polys), encoding="utf-8")
    print(f"{len(polys.entries)} regions -> {args.output}")
    return 0


def cmd_validate(args) -> int:
    problems: list[str] = []
    parsed = {}
    for kind, parser in (
        ("polygons", dio.parse_polygon_file),
        ("colormap", dio.parse_color_map),
        ("relocations", dio.parse_relocation_file),
    ):
        path = getattr(args, kind)
        try:
            parsed[kind] = parser(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            problems.append(f"{path}: cannot read: {exc}")
        except dio.ParseError as exc:
            problems.extend(f"{path}: {msg} (line {line})" for line, msg in exc.errors)

    if not problems:
        try:
            ds = dio.load_dataset(parsed["polygons"], parsed["colormap"], parsed["relocations"])
        except dio.DatasetError as exc:
            problems.extend(exc.problems)

    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return 1

    from .engine import period_totals

    total = sum(period_totals(ds.series))
    n = ds.series.building_count
    t = ds.series.period_count
    print(f"{n} buildings, {t} periods, {total} relocations")
    return 0


def cmd_render(args) -> int:
    try:
        style, arc_params = load_params(args.config, args.sets)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        ds = _load_dataset(args)
    except (dio.ParseError, dio.DatasetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    t = ds.series.period_count
    lo = args.window_from if args.window_from is not None else 0
    hi = args.window_to if args.window_to is not None else t - 1
    if lo > hi:
        print("error: lo > hi", file=sys.stderr)
        return 1
    selected = frozenset(args.selected or [])
    try:
        vs = ViewState(TimeWindow(lo, hi), args.threshold, selected, args.armed)
        scene = compile_scene(ds, vs, style, arc_params)
    except (ValueError, ViewStateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    Path(args.output).write_text(scene_to_svg(scene), encoding="utf-8")
    print(f"scene -> {args.output}")
    return 0


def cmd_serve(args) -> int:
    try:
        style, arc_params = load_params(args.config, args.sets)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        ds = _load_dataset(args)
    except (dio.ParseError, dio.DatasetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    static_dir = Path(args.static) if args.static else None
    if static_dir is not None and not static_dir.is_dir():
        print(f"error: static directory {static_dir} does not exist", file=sys.stderr)
        return 1
    try:
        server = SceneServer(ds, style, arc_params, static_dir, port=args.port)
    except OSError as exc:
        print(f"error: cannot listen on port {args.port}: {exc}", file=sys.stderr)
        return 1
    print(f"serving on http://127.0.0.1:{server.port}/ (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relocviz",
        description="Flow-map visualization of periodic relocations between buildings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vectorize", help="convert a PPM map image into a polygon file")
    p.add_argument("input", help="binary PPM (P6) map image")
    p.add_argument("-o", "--output", required=True, help="polygon file to write")
    p.add_argument("--snap", type=int, default=0, metavar="TOL", help="per-channel color snap tolerance")
    p.add_argument("--min-area", type=int, default=1, help="drop regions smaller than this many pixels")
    p.set_defaults(func=cmd_vectorize)

    p = sub.add_parser("validate", help="check the three dataset files")
    _add_dataset_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("render", help="render one view to a static SVG")
    _add_dataset_args(p)
    p.add_argument("-o", "--output", required=True, help="SVG file to write")
    p.add_argument("--from", dest="window_from", type=int, default=None, help="window lower period index")
    p.add_argument("--to", dest="window_to", type=int, default=None, help="window upper period index")
    p.add_argument("--threshold", type=int, default=1, help="background link threshold")
    p.add_argument("--selected", type=int, action="append", help="selected building id (repeatable)")
    p.add_argument("--armed", type=int, default=None, help="armed building id")
    _add_param_args(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="serve the scene API and UI assets")
    _add_dataset_args(p)
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--static", help="directory with built UI assets")
    _add_param_args(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
