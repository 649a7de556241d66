"""Compile a Dataset plus a ViewState into a renderer-agnostic layered Scene,
and serialize Scenes to the JSON wire format or to a static SVG document.

Layer order, back to front: context polygons, background arcs, data
buildings at rest, focus arcs, armed/selected buildings. Cards, the period
histogram, and the slider ride alongside the layers so a renderer needs no
engine logic at all.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from . import engine, styling
from .arcs import ArcParams, arrowheads_for, sample_spiral_arcs
from .dataset import Dataset
from .engine import SummaryCard, TimeWindow
from .geometry import Polygon, signed_area2
from .styling import Hsl, StyleParams

CARD_OFFSET = (16.0, -16.0)  # default card position relative to the anchor
CARD_CASCADE = 12.0  # px shift per additional default-placed card

HISTOGRAM_BAND = 80.0  # px reserved under the map for histogram + slider


@dataclass(frozen=True, slots=True)
class ViewState:
    """The complete analyst input for one frame."""

    window: TimeWindow
    threshold: int = 1
    selected: frozenset[int] = frozenset()
    armed: int | None = None
    cards: tuple[tuple[int, float, float, bool], ...] = ()  # (building, x, y, pinned)


@dataclass(frozen=True, slots=True)
class PolygonItem:
    points: tuple[tuple[float, float], ...]
    fill: Hsl
    building: int | None = None  # set for building shapes so the UI can hit-test


@dataclass(frozen=True, slots=True)
class ArcItem:
    src: int
    dst: int
    count: int
    points: np.ndarray  # (M+1, 2)
    thickness: float
    fill: Hsl
    arrow: np.ndarray  # (3, 2)


@dataclass(frozen=True, slots=True)
class HistogramBar:
    label: str
    total: int
    height: float
    in_window: bool


@dataclass(frozen=True, slots=True)
class CardPayload:
    summary: SummaryCard
    x: float
    y: float
    pinned: bool


@dataclass(frozen=True, slots=True)
class Scene:
    width: int
    height: int
    layers: tuple[tuple, ...]  # 5 layers of PolygonItem / ArcItem
    histogram: tuple[HistogramBar, ...]
    slider: tuple[int, int, int]  # (lo, hi, period count)
    cards: tuple[CardPayload, ...]


class ViewStateError(ValueError):
    pass


def _validate(ds: Dataset, vs: ViewState) -> None:
    n = ds.series.building_count
    t = ds.series.period_count
    if vs.window.hi >= t:
        raise ViewStateError("window out of range")
    if vs.threshold < 1:
        raise ViewStateError("threshold must be >= 1")
    for i in vs.selected:
        if not 0 <= i < n:
            raise ViewStateError(f"unknown building id {i}")
    if vs.armed is not None and not 0 <= vs.armed < n:
        raise ViewStateError(f"unknown building id {vs.armed}")
    seen = set()
    for i, _, _, _ in vs.cards:
        if i not in vs.selected:
            raise ViewStateError(f"card for unselected building {i}")
        if i in seen:
            raise ViewStateError(f"duplicate card for building {i}")
        seen.add(i)


def _poly_sort_key(item: PolygonItem):
    enclosed = abs(signed_area2(item.points))
    return (-enclosed, item.points[0])


def compile_scene(
    ds: Dataset,
    vs: ViewState,
    style: StyleParams = StyleParams(),
    arc_params: ArcParams = ArcParams(),
) -> Scene:
    """Pure compilation of one frame; equal inputs give equal scenes."""
    _validate(ds, vs)

    layers: list[list] = [[], [], [], [], []]

    for poly, color in ds.context_polygons:
        fill = styling.context_color(color, style)
        layers[styling.LAYER_CONTEXT].append(
            PolygonItem(tuple((float(x), float(y)) for x, y in poly.vertices), fill)
        )

    levels = {
        b.id: styling.attention_level(b.id in vs.selected, b.id == vs.armed)
        for b in ds.buildings
    }
    for b in ds.buildings:
        fill = (style.building_hue, styling.saturation(levels[b.id], style), style.data_lightness)
        layer = styling.layer_of("building", levels[b.id])
        for poly in b.polygons:
            layers[layer].append(
                PolygonItem(
                    tuple((float(x), float(y)) for x, y in poly.vertices), fill, b.id
                )
            )

    agg = engine.aggregate(ds.series, vs.window)
    links = engine.visible_links(agg, vs.threshold, vs.selected, vs.armed)
    if links:
        anchors = {b.id: b.anchor for b in ds.buildings}
        src_pts = np.array([anchors[l.src] for l in links], dtype=np.float64)
        dst_pts = np.array([anchors[l.dst] for l in links], dtype=np.float64)
        points, tangents = sample_spiral_arcs(src_pts, dst_pts, arc_params)
        points.setflags(write=False)
        arrows = arrowheads_for(dst_pts, tangents, arc_params)
        arrows.setflags(write=False)
        sat_by_level = [styling.saturation(lvl, style) for lvl in range(4)]
        for k, link in enumerate(links):
            level = max(levels[link.src], levels[link.dst])
            fill = (style.arc_hue, sat_by_level[level], style.data_lightness)
            item = ArcItem(
                src=link.src,
                dst=link.dst,
                count=link.count,
                points=points[k],
                thickness=styling.arc_thickness(link.count, style),
                fill=fill,
                arrow=arrows[k],
            )
            layers[styling.layer_of("arc", level)].append(item)

    for z in (0, 2, 4):
        layers[z].sort(key=_poly_sort_key)

    totals = engine.period_totals(ds.series)
    max_total = max(totals)
    histogram = tuple(
        HistogramBar(
            label=label,
            total=totals[t],
            height=styling.histogram_height(totals[t], max_total, style),
            in_window=vs.window.contains(t),
        )
        for t, label in enumerate(ds.series.period_labels)
    )

    stored = {i: (x, y, pinned) for i, x, y, pinned in vs.cards}
    cards = []
    cascade = 0
    for i in sorted(vs.selected):
        summary = engine.building_summary(agg, i)
        if i in stored:
            x, y, pinned = stored[i]
        else:
            ax, ay = ds.buildings[i].anchor
            x = ax + CARD_OFFSET[0] + cascade * CARD_CASCADE
            y = ay + CARD_OFFSET[1] + cascade * CARD_CASCADE
            pinned = False
            cascade += 1
        cards.append(CardPayload(summary, float(x), float(y), pinned))

    return Scene(
        width=ds.width,
        height=ds.height,
        layers=tuple(tuple(layer) for layer in layers),
        histogram=histogram,
        slider=(vs.window.lo, vs.window.hi, ds.series.period_count),
        cards=tuple(cards),
    )


# --- JSON wire format ------------------------------------------------------


def _fill_dict(fill: Hsl) -> dict:
    return {"h": float(fill[0]), "s": float(fill[1]), "l": float(fill[2])}


def _item_dict(item) -> dict:
    if isinstance(item, PolygonItem):
        d = {
            "kind": "poly",
            "points": [[float(x), float(y)] for x, y in item.points],
            "fill": _fill_dict(item.fill),
        }
        if item.building is not None:
            d["building"] = item.building
        return d
    return {
        "kind": "arc",
        "src": item.src,
        "dst": item.dst,
        "count": item.count,
        "points": item.points.tolist(),
        "thickness": float(item.thickness),
        "fill": _fill_dict(item.fill),
        "arrow": item.arrow.tolist(),
    }


def scene_to_dict(scene: Scene) -> dict:
    """The stable wire schema consumed by any renderer."""
    return {
        "canvas": {"w": scene.width, "h": scene.height},
        "layers": [[_item_dict(item) for item in layer] for layer in scene.layers],
        "histogram": [
            {
                "label": bar.label,
                "total": bar.total,
                "height": float(bar.height),
                "in_window": bar.in_window,
            }
            for bar in scene.histogram
        ],
        "slider": {"lo": scene.slider[0], "hi": scene.slider[1], "t": scene.slider[2]},
        "cards": [
            {
                "building": card.summary.building,
                "x": float(card.x),
                "y": float(card.y),
                "pinned": card.pinned,
                "out": card.summary.out_total,
                "in": card.summary.in_total,
                "net": card.summary.net,
                "internal": card.summary.internal,
                "partners": [
                    {"id": p[0], "out": p[1], "in": p[2]} for p in card.summary.partners
                ],
            }
            for card in scene.cards
        ],
    }


def scene_to_json(scene: Scene) -> str:
    """Canonical serialization: sorted keys, compact separators."""
    return json.dumps(scene_to_dict(scene), sort_keys=True, separators=(",", ":"))


def scene_digest(scene: Scene) -> str:
    """Hash of the canonical serialization; equal scenes hash equal."""
    return hashlib.sha256(scene_to_json(scene).encode("utf-8")).hexdigest()


# --- SVG export -------------------------------------------------------------


def _f(v: float) -> str:
    return f"{v:.3f}"


def _hsl_css(fill: Hsl) -> str:
    return f"hsl({_f(fill[0])},{_f(fill[1] * 100)}%,{_f(fill[2] * 100)}%)"


def _polygon_svg(item: PolygonItem) -> str:
    pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in item.points)
    return f'<polygon points="{pts}" fill="{_hsl_css(item.fill)}"/>'


def _arc_svg(item: ArcItem) -> str:
    cmds = [f"M {_f(item.points[0, 0])} {_f(item.points[0, 1])}"]
    cmds += [f"L {_f(x)} {_f(y)}" for x, y in item.points[1:]]
    color = _hsl_css(item.fill)
    path = (
        f'<path d="{" ".join(cmds)}" fill="none" stroke="{color}" '
        f'stroke-width="{_f(item.thickness)}" stroke-linecap="round"/>'
    )
    tri = " ".join(f"{_f(x)},{_f(y)}" for x, y in item.arrow)
    return path + f'<polygon points="{tri}" fill="{color}"/>'


def scene_to_svg(scene: Scene) -> str:
    """Static export: groups layer-0..layer-4 in z order, then histogram,
    slider, and cards; all numbers at fixed 3-decimal precision, so equal
    scenes serialize byte-identically."""
    w = scene.width
    h = scene.height
    total_h = h + HISTOGRAM_BAND
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(total_h)}" '
        f'viewBox="0 0 {_f(w)} {_f(total_h)}">',
    ]
    for z, layer in enumerate(scene.layers):
        out.append(f'<g id="layer-{z}">')
        for item in layer:
            out.append(_polygon_svg(item) if isinstance(item, PolygonItem) else _arc_svg(item))
        out.append("</g>")

    bars = scene.histogram
    out.append('<g id="histogram">')
    if bars:
        slot = w / len(bars)
        bar_w = slot * 0.8
        base = h + HISTOGRAM_BAND - 10.0
        for t, bar in enumerate(bars):
            x = t * slot + slot * 0.1
            y = base - bar.height
            opacity = "1.000" if bar.in_window else "0.350"
            out.append(
                f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(bar_w)}" '
                f'height="{_f(bar.height)}" fill="#607080" opacity="{opacity}"/>'
            )
    out.append("</g>")

    lo, hi, t_count = scene.slider
    out.append('<g id="slider">')
    if t_count > 0:
        slot = w / t_count
        track_y = h + 8.0
        out.append(
            f'<line x1="0.000" y1="{_f(track_y)}" x2="{_f(w)}" y2="{_f(track_y)}" '
            'stroke="#404040" stroke-width="1.000"/>'
        )
        for pos, name in ((lo, "lo"), (hi, "hi")):
            cx = (pos + 0.5) * slot
            out.append(
                f'<circle id="handle-{name}" cx="{_f(cx)}" cy="{_f(track_y)}" r="4.000" '
                'fill="#202020"/>'
            )
        mid = (lo + hi + 1) / 2.0 * slot
        out.append(
            f'<circle id="handle-mid" cx="{_f(mid)}" cy="{_f(track_y)}" r="3.000" '
            'fill="#808080"/>'
        )
    out.append("</g>")

    out.append('<g id="cards">')
    for card in scene.cards:
        s = card.summary
        lines = [
            f"building {s.building}",
            f"out {s.out_total}  in {s.in_total}",
            f"net {s.net:+d}  internal {s.internal}",
        ]
        lines += [f"#{p[0]}: out {p[1]} in {p[2]}" for p in s.partners]
        card_h = 14.0 * len(lines) + 8.0
        out.append(f'<g transform="translate({_f(card.x)},{_f(card.y)})">')
        out.append(
            f'<rect x="0.000" y="0.000" width="120.000" height="{_f(card_h)}" '
            f'fill="#ffffff" stroke="#303030" stroke-width="{"1.500" if card.pinned else "0.500"}"/>'
        )
        for k, text in enumerate(lines):
            out.append(f'<text x="6.000" y="{_f(16.0 + 14.0 * k)}" font-size="11.000">{text}</text>')
        out.append("</g>")
    out.append("</g>")

    out.append("</svg>")
    return "\n".join(out) + "\n"
