"""Parsing, validation, and joining of the three dataset text files.

The three inputs are line-oriented UTF-8 text with `#` comment lines:

* polygon file   -- header ``canvas <width> <height>``, then one polygon per
  line as ``<RRGGBB> <x>,<y> <x>,<y> ...`` with integer coordinates;
* color map file -- one ``<RRGGBB> <name>`` per line, names without
  whitespace;
* relocation file -- ``buildings <name1> ... <nameN>``, then repeated blocks
  of ``period <label>`` followed by N rows of N non-negative integers.

`load_dataset` joins the parsed values into an immutable `Dataset`; the join
is a strict bijection between color-map names and matrix row/column names.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .colors import Color
from .geometry import (
    Point,
    Polygon,
    area,
    centroid,
    contains_point,
    interior_point_on_scanline,
    is_simple,
    signed_area2,
)


class ParseError(ValueError):
    """Raised for any dataset text that violates its file format.

    Carries every violation found as ``(line_number, message)`` pairs;
    ``str()`` renders them as ``message (line N)`` joined with ``; ``.
    """

    def __init__(self, errors: list[tuple[int, str]]):
        self.errors = list(errors)
        super().__init__("; ".join(f"{msg} (line {line})" for line, msg in self.errors))


class DatasetError(ValueError):
    """Raised when the three parsed inputs do not join into a dataset."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True, slots=True)
class PolygonSet:
    """The vectorized map: ordered (polygon, fill color) entries on a canvas."""

    entries: tuple[tuple[Polygon, Color], ...]
    width: int
    height: int


@dataclass(frozen=True, slots=True)
class ColorMap:
    """Fill color -> building name. Colors without an entry are context."""

    mapping: dict[Color, str]


@dataclass(frozen=True, slots=True)
class RelocationSeries:
    """T stacked NxN matrices; entry [t][i][j] = persons moving i -> j in period t."""

    period_labels: tuple[str, ...]
    building_names: tuple[str, ...]
    matrices: np.ndarray  # shape (T, N, N), int64, read-only

    def __post_init__(self) -> None:
        m = self.matrices
        if m.ndim != 3 or m.shape[0] != len(self.period_labels):
            raise ValueError("matrix stack shape does not match period labels")
        n = len(self.building_names)
        if m.shape[1] != n or m.shape[2] != n:
            raise ValueError("matrix dimensions do not match building names")
        if len(self.period_labels) < 1 or n < 1:
            raise ValueError("need at least one period and one building")
        if (m < 0).any():
            raise ValueError("negative relocation entry")

    @property
    def period_count(self) -> int:
        return len(self.period_labels)

    @property
    def building_count(self) -> int:
        return len(self.building_names)


@dataclass(frozen=True, slots=True)
class Building:
    id: int
    name: str
    color: Color
    polygons: tuple[Polygon, ...]
    anchor: Point


@dataclass(frozen=True, slots=True)
class Dataset:
    """The joined, immutable model every downstream computation reads from."""

    buildings: tuple[Building, ...]
    context_polygons: tuple[tuple[Polygon, Color], ...]
    series: RelocationSeries
    width: int
    height: int

    def building_by_name(self, name: str) -> Building:
        for b in self.buildings:
            if b.name == name:
                return b
        raise KeyError(name)


def _content_lines(text: str):
    """Yield (1-based line number, stripped line) skipping blanks and comments."""
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield i, line


def parse_polygon_file(text: str) -> PolygonSet:
    errors: list[tuple[int, str]] = []
    entries: list[tuple[Polygon, Color]] = []
    width = height = None

    for lineno, line in _content_lines(text):
        tokens = line.split()
        if width is None:
            if len(tokens) != 3 or tokens[0] != "canvas":
                raise ParseError([(lineno, "missing or invalid canvas header")])
            try:
                width, height = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise ParseError([(lineno, "missing or invalid canvas header")]) from None
            if width < 1 or height < 1:
                raise ParseError([(lineno, "canvas dimensions must be positive")])
            continue

        try:
            color = Color.from_hex(tokens[0])
        except ValueError:
            errors.append((lineno, f"malformed hex color {tokens[0]!r}"))
            continue
        if len(tokens) - 1 < 3:
            errors.append((lineno, "polygon needs ≥3 vertices"))
            continue
        verts: list[tuple[int, int]] = []
        bad = False
        for tok in tokens[1:]:
            parts = tok.split(",")
            try:
                if len(parts) != 2:
                    raise ValueError
                x, y = int(parts[0]), int(parts[1])
            except ValueError:
                errors.append((lineno, f"non-numeric coordinate {tok!r}"))
                bad = True
                break
            if not (0 <= x <= width and 0 <= y <= height):
                errors.append((lineno, f"vertex {tok} outside canvas"))
                bad = True
                break
            verts.append((x, y))
        if bad:
            continue
        poly = Polygon(tuple(verts))
        if signed_area2(poly.vertices) == 0:
            errors.append((lineno, "polygon has zero area"))
            continue
        if not is_simple(poly):
            errors.append((lineno, "polygon is self-intersecting"))
            continue
        entries.append((poly, color))

    if width is None:
        raise ParseError([(1 + text.count("\n"), "missing or invalid canvas header")])
    if errors:
        raise ParseError(errors)
    return PolygonSet(tuple(entries), width, height)


def format_polygon_file(polys: PolygonSet) -> str:
    lines = [f"canvas {polys.width} {polys.height}"]
    for poly, color in polys.entries:
        coords = " ".join(f"{x},{y}" for x, y in poly.vertices)
        lines.append(f"{color.to_hex()} {coords}")
    return "\n".join(lines) + "\n"


def parse_color_map(text: str) -> ColorMap:
    errors: list[tuple[int, str]] = []
    mapping: dict[Color, str] = {}
    names_seen: dict[str, int] = {}

    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            errors.append((lineno, "expected '<RRGGBB> <name>'"))
            continue
        hex_tok, name = tokens
        try:
            color = Color.from_hex(hex_tok)
        except ValueError:
            errors.append((lineno, f"malformed hex color {hex_tok!r}"))
            continue
        if color in mapping:
            errors.append((lineno, f"duplicate color {color.to_hex()}"))
            continue
        if name in names_seen:
            errors.append((lineno, f"duplicate name {name}"))
            continue
        mapping[color] = name
        names_seen[name] = lineno

    if errors:
        raise ParseError(errors)
    return ColorMap(mapping)


def format_color_map(cmap: ColorMap) -> str:
    lines = [f"{color.to_hex()} {name}" for color, name in cmap.mapping.items()]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_relocation_file(text: str) -> RelocationSeries:
    errors: list[tuple[int, str]] = []
    names: tuple[str, ...] | None = None
    labels: list[str] = []
    label_lines: dict[str, int] = {}
    matrices: list[list[list[int]]] = []
    current_rows: list[list[int]] | None = None
    current_label_line = 0

    def close_period() -> None:
        nonlocal current_rows
        if current_rows is None:
            return
        n = len(names)  # type: ignore[arg-type]
        if len(current_rows) != n:
            errors.append(
                (
                    current_label_line,
                    f"period {labels[-1]}: expected {n} rows, got {len(current_rows)}",
                )
            )
            # Pad so downstream shape stays consistent for later checks.
            while len(current_rows) < n:
                current_rows.append([0] * n)
            del current_rows[n:]
        matrices.append(current_rows)
        current_rows = None

    last_line = 0
    for lineno, line in _content_lines(text):
        last_line = lineno
        tokens = line.split()
        if names is None:
            if tokens[0] != "buildings" or len(tokens) < 2:
                raise ParseError([(lineno, "expected 'buildings <name1> ...' header")])
            dupes = {n for n in tokens[1:] if tokens[1:].count(n) > 1}
            if dupes:
                raise ParseError(
                    [(lineno, f"duplicate building name {sorted(dupes)[0]}")]
                )
            names = tuple(tokens[1:])
            continue
        if tokens[0] == "period":
            close_period()
            if len(tokens) != 2:
                errors.append((lineno, "expected 'period <label>'"))
                labels.append(f"<line {lineno}>")
            else:
                label = tokens[1]
                if label in label_lines:
                    errors.append((lineno, f"duplicate period label {label}"))
                label_lines.setdefault(label, lineno)
                labels.append(label)
            current_rows = []
            current_label_line = lineno
            continue
        if current_rows is None:
            errors.append((lineno, "matrix row outside a period block"))
            continue
        row: list[int] = []
        for tok in tokens:
            try:
                v = int(tok)
            except ValueError:
                errors.append((lineno, f"non-numeric entry {tok!r}"))
                v = 0
            if v < 0:
                errors.append((lineno, f"negative entry {v}"))
                v = 0
            row.append(v)
        if len(row) != len(names):
            errors.append(
                (lineno, f"period {labels[-1]}: expected {len(names)} entries, got {len(row)}")
            )
            row = (row + [0] * len(names))[: len(names)]
        if len(current_rows) >= len(names):
            errors.append(
                (lineno, f"period {labels[-1]}: expected {len(names)} rows, got more")
            )
            continue
        current_rows.append(row)

    if names is None:
        raise ParseError([(max(last_line, 1), "expected 'buildings <name1> ...' header")])
    close_period()
    if not labels:
        errors.append((max(last_line, 1), "no periods defined"))
    if errors:
        raise ParseError(errors)

    stack = np.array(matrices, dtype=np.int64)
    stack.setflags(write=False)
    return RelocationSeries(tuple(labels), names, stack)


def format_relocation_file(series: RelocationSeries) -> str:
    lines = ["buildings " + " ".join(series.building_names)]
    for t, label in enumerate(series.period_labels):
        lines.append(f"period {label}")
        for row in series.matrices[t]:
            lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def building_anchor(polygons: tuple[Polygon, ...] | list[Polygon]) -> Point:
    """Canonical per-building point where arcs start and end.

    Centroid of the largest-area polygon; when that centroid falls outside
    the polygon (non-convex shapes), the interior point nearest to it along a
    horizontal scanline through the centroid.
    """
    if not polygons:
        raise ValueError("building has no polygons")
    largest = max(polygons, key=area)
    c = centroid(largest)
    if contains_point(largest, c):
        return c
    return interior_point_on_scanline(largest, c)


def load_dataset(polys: PolygonSet, cmap: ColorMap, series: RelocationSeries) -> Dataset:
    """Join the three parsed inputs; every violation is reported at once."""
    problems: list[str] = []

    cmap_names = set(cmap.mapping.values())
    series_names = set(series.building_names)
    for name in sorted(cmap_names - series_names):
        problems.append(f"building {name} has no relocation data")
    for name in sorted(series_names - cmap_names):
        problems.append(f"building {name} has no color map entry")

    by_color: dict[Color, list[Polygon]] = {}
    for poly, color in polys.entries:
        by_color.setdefault(color, []).append(poly)
    for color, name in cmap.mapping.items():
        if color not in by_color:
            problems.append(f"color {color.to_hex()} ({name}) matches no polygon")

    if problems:
        raise DatasetError(problems)

    name_to_color = {name: color for color, name in cmap.mapping.items()}
    buildings = []
    for i, name in enumerate(series.building_names):
        color = name_to_color[name]
        shapes = tuple(by_color[color])
        buildings.append(
            Building(id=i, name=name, color=color, polygons=shapes, anchor=building_anchor(shapes))
        )

    mapped_colors = set(cmap.mapping)
    context = tuple((poly, color) for poly, color in polys.entries if color not in mapped_colors)
    return Dataset(tuple(buildings), context, series, polys.width, polys.height)
