"""Raster map -> polygon conversion, plus the inverse rasterization used to
verify it.

Pixels are unit cells: pixel (x, y) occupies [x, x+1] x [y, y+1]. Regions are
4-connected runs of one color; each region's outer boundary is traced along
pixel-lattice edges, clockwise in screen coordinates (y grows downward).
Holes are not modeled explicitly -- a hole is simply another color's region
that paints later (see `vectorize` ordering).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .colors import Color
from .dataset import PolygonSet
from .geometry import Polygon, signed_area2
from .raster import RasterImage


@dataclass(frozen=True, slots=True)
class PixelRegion:
    """A 4-connected set of same-color pixels (after snapping)."""

    color: Color
    pixels: frozenset[tuple[int, int]]


def _packed(img: RasterImage) -> list[int]:
    rgb = img.rgb
    return [
        (rgb[i] << 16) | (rgb[i + 1] << 8) | rgb[i + 2]
        for i in range(0, len(rgb), 3)
    ]


def _chebyshev(a: int, b: int) -> int:
    return max(
        abs((a >> 16) - (b >> 16)),
        abs(((a >> 8) & 0xFF) - ((b >> 8) & 0xFF)),
        abs((a & 0xFF) - (b & 0xFF)),
    )


def extract_regions(img: RasterImage, snap_tolerance: int = 0) -> list[PixelRegion]:
    """Partition the image into 4-connected uniform-color regions.

    With snap_tolerance > 0, a pixel whose color is within that per-channel
    distance of an already-seen color (palette built in top-left to
    bottom-right scan order) is treated as that color; the nearest seen color
    wins, earliest seen on ties. Regions are returned ordered by their
    top-most then left-most pixel.
    """
    if snap_tolerance < 0:
        raise ValueError("snap tolerance must be >= 0")
    w, h = img.width, img.height
    raw = _packed(img)

    palette: list[int] = []
    palette_index: dict[int, int] = {}
    effective = [0] * (w * h)
    for i, c in enumerate(raw):
        idx = palette_index.get(c)
        if idx is None:
            best = None
            best_d = snap_tolerance + 1
            for j, seen in enumerate(palette):
                d = _chebyshev(c, seen)
                if d < best_d:
                    best, best_d = j, d
            if best is None:
                idx = len(palette)
                palette.append(c)
                # Exact future matches resolve directly; snapped colors do
                # not enter the palette.
                palette_index[c] = idx
            else:
                idx = best
        effective[i] = idx

    regions: list[PixelRegion] = []
    assigned = [False] * (w * h)
    for start in range(w * h):
        if assigned[start]:
            continue
        color_idx = effective[start]
        queue = deque([start])
        assigned[start] = True
        pixels = []
        while queue:
            i = queue.popleft()
            pixels.append((i % w, i // w))
            x = i % w
            if x + 1 < w and not assigned[i + 1] and effective[i + 1] == color_idx:
                assigned[i + 1] = True
                queue.append(i + 1)
            if x > 0 and not assigned[i - 1] and effective[i - 1] == color_idx:
                assigned[i - 1] = True
                queue.append(i - 1)
            if i + w < w * h and not assigned[i + w] and effective[i + w] == color_idx:
                assigned[i + w] = True
                queue.append(i + w)
            if i - w >= 0 and not assigned[i - w] and effective[i - w] == color_idx:
                assigned[i - w] = True
                queue.append(i - w)
        packed = palette[color_idx]
        color = Color((packed >> 16) & 0xFF, (packed >> 8) & 0xFF, packed & 0xFF)
        regions.append(PixelRegion(color, frozenset(pixels)))
    return regions


def trace_boundary(region: PixelRegion) -> Polygon:
    """Outer boundary of a 4-connected region as a closed rectilinear polygon.

    Starts at the region's top-most, left-most corner and walks clockwise
    (interior on the right) in unit steps along lattice edges. At corners
    where two diagonal pixels of the region meet, the leftmost turn is taken,
    which keeps the walk on the outer boundary; the enclosed pocket belongs
    to other regions and paints separately.
    """
    cells = region.pixels
    if not cells:
        raise ValueError("empty region")
    x0, y0 = min(cells, key=lambda p: (p[1], p[0]))

    def edge_ok(cx: int, cy: int, dx: int, dy: int) -> bool:
        """Directed lattice edge from (cx, cy) toward (dx, dy) with the
        region on its right and non-region on its left."""
        if dx == 1:
            return (cx, cy) in cells and (cx, cy - 1) not in cells
        if dx == -1:
            return (cx - 1, cy - 1) in cells and (cx - 1, cy) not in cells
        if dy == 1:
            return (cx - 1, cy) in cells and (cx, cy) not in cells
        return (cx, cy - 1) in cells and (cx - 1, cy - 1) not in cells

    corners: list[tuple[int, int]] = []
    cx, cy = x0, y0
    dx, dy = 1, 0  # the top edge of the start pixel is always on the boundary
    while True:
        corners.append((cx, cy))
        cx, cy = cx + dx, cy + dy
        if (cx, cy) == (x0, y0):
            break
        # Turn preference: left, straight, right (left first resolves the
        # diagonal-touch corner toward the outer boundary).
        for ndx, ndy in ((dy, -dx), (dx, dy), (-dy, dx)):
            if edge_ok(cx, cy, ndx, ndy):
                dx, dy = ndx, ndy
                break
        else:
            raise AssertionError("boundary walk left the boundary")
    return Polygon(tuple(corners))


def simplify_collinear(poly: Polygon) -> Polygon:
    """Drop vertices that continue straight between their original neighbors."""
    verts = poly.vertices
    n = len(verts)
    kept = []
    for i in range(n):
        px, py = verts[i - 1]
        x, y = verts[i]
        nx, ny = verts[(i + 1) % n]
        ax, ay = x - px, y - py
        bx, by = nx - x, ny - y
        straight = ax * by - ay * bx == 0 and ax * bx + ay * by > 0
        if not straight:
            kept.append((x, y))
    return Polygon(tuple(kept)) if kept else poly


def vectorize(img: RasterImage, snap_tolerance: int = 0, min_area: int = 1) -> PolygonSet:
    """Full raster -> PolygonSet pipeline.

    Regions smaller than min_area pixels are dropped. Entries are ordered by
    descending enclosed boundary area (ties by region discovery order), so a
    region nested inside another always paints after its container and the
    painter's algorithm reproduces the image exactly.
    """
    regions = extract_regions(img, snap_tolerance)
    entries = []
    for order, region in enumerate(regions):
        if len(region.pixels) < min_area:
            continue
        poly = simplify_collinear(trace_boundary(region))
        enclosed = abs(signed_area2(poly.vertices))
        entries.append((-enclosed, order, poly, region.color))
    entries.sort(key=lambda e: (e[0], e[1]))
    return PolygonSet(tuple((poly, color) for _, _, poly, color in entries), img.width, img.height)


def rasterize(polys: PolygonSet) -> RasterImage:
    """Paint the entries in list order onto a black canvas.

    A pixel is filled when its center (x+0.5, y+0.5) lies inside the polygon
    (even-odd rule); the scanline at y+0.5 never meets an integer vertex, so
    the rule is exact for lattice polygons.
    """
    w, h = polys.width, polys.height
    buf = bytearray(w * h * 3)
    for poly, color in polys.entries:
        verts = poly.vertices
        n = len(verts)
        ys = [v[1] for v in verts]
        y_lo = max(0, min(ys))
        y_hi = min(h, max(ys))
        triple = bytes((color.r, color.g, color.b))
        for y in range(y_lo, y_hi):
            cy = y + 0.5
            xs: list[float] = []
            for i in range(n):
                x1, y1 = verts[i]
                x2, y2 = verts[(i + 1) % n]
                if (y1 > cy) != (y2 > cy):
                    xs.append(x1 + (cy - y1) * (x2 - x1) / (y2 - y1))
            xs.sort()
            for k in range(0, len(xs) - 1, 2):
                # Centers x+0.5 inside (xs[k], xs[k+1]).
                x_start = max(0, int(xs[k] + 0.5))
                x_end = min(w, int(xs[k + 1] + 0.5))
                if x_end > x_start:
                    row = y * w
                    buf[(row + x_start) * 3 : (row + x_end) * 3] = triple * (x_end - x_start)
    return RasterImage(w, h, bytes(buf))
