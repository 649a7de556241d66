"""Polygon primitives shared by the parsers, the vectorizer, and scene export.

Polygons live in pixel coordinates with y growing downward. Vertices are
ordered and the closing edge back to the first vertex is implicit.
"""

from __future__ import annotations

from dataclasses import dataclass

Point = tuple[float, float]


@dataclass(frozen=True, slots=True)
class Polygon:
    """A simple closed polygon given by its vertex ring."""

    vertices: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def first_vertex(self) -> tuple[int, int]:
        return self.vertices[0]


def signed_area2(vertices) -> float:
    """Twice the signed shoelace area (positive for clockwise rings in y-down)."""
    total = 0
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def area(poly: Polygon) -> float:
    return abs(signed_area2(poly.vertices)) / 2.0


def centroid(poly: Polygon) -> Point:
    """Area centroid. Requires nonzero area."""
    a2 = signed_area2(poly.vertices)
    if a2 == 0:
        raise ValueError("centroid of zero-area polygon")
    cx = 0.0
    cy = 0.0
    verts = poly.vertices
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        w = x1 * y2 - x2 * y1
        cx += (x1 + x2) * w
        cy += (y1 + y2) * w
    return (cx / (3.0 * a2), cy / (3.0 * a2))


def contains_point(poly: Polygon, p: Point) -> bool:
    """Even-odd (crossing-number) point-in-polygon test.

    Points exactly on the boundary are not guaranteed either way; callers
    needing interior points must keep clear of edges.
    """
    px, py = p
    inside = False
    verts = poly.vertices
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        if (y1 > py) != (y2 > py):
            x_cross = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if x_cross > px:
                inside = not inside
    return inside


def scanline_intervals(poly: Polygon, y: float) -> list[tuple[float, float]]:
    """Interior intervals of the horizontal line at height y, left to right."""
    xs: list[float] = []
    verts = poly.vertices
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xs.append(x1 + (y - y1) * (x2 - x1) / (y2 - y1))
    xs.sort()
    return [(xs[i], xs[i + 1]) for i in range(0, len(xs) - 1, 2)]


def interior_point_on_scanline(poly: Polygon, target: Point) -> Point:
    """A point inside `poly`, on (or near) the horizontal line through `target`,
    as close to `target` as the interior allows.

    Scanlines that coincide with horizontal edges can yield degenerate
    intervals, so candidates are verified with the even-odd test and the
    scanline is nudged when necessary.
    """
    tx, ty = target
    for dy in (0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0):
        y = ty + dy
        best: Point | None = None
        best_dist = float("inf")
        for x_lo, x_hi in scanline_intervals(poly, y):
            if x_hi - x_lo <= 0:
                continue
            margin = min(0.25, (x_hi - x_lo) / 4.0)
            x = min(max(tx, x_lo + margin), x_hi - margin)
            if contains_point(poly, (x, y)) and abs(x - tx) < best_dist:
                best = (x, y)
                best_dist = abs(x - tx)
        if best is not None:
            return best
    raise ValueError("no interior scanline point found")


def _orient(ax, ay, bx, by, cx, cy) -> int:
    """Sign of the cross product (b-a) x (c-a); exact for integer inputs."""
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


def _on_segment(ax, ay, bx, by, px, py) -> bool:
    """Whether collinear point p lies within segment ab's bounding box."""
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def _segments_touch(a, b, c, d) -> bool:
    """Whether closed segments ab and cd share any point."""
    o1 = _orient(*a, *b, *c)
    o2 = _orient(*a, *b, *d)
    o3 = _orient(*c, *d, *a)
    o4 = _orient(*c, *d, *b)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(*a, *b, *c):
        return True
    if o2 == 0 and _on_segment(*a, *b, *d):
        return True
    if o3 == 0 and _on_segment(*c, *d, *a):
        return True
    if o4 == 0 and _on_segment(*c, *d, *b):
        return True
    return False


def is_simple(poly: Polygon) -> bool:
    """True when no two edges intersect except adjacent edges at their shared
    vertex (and those must not overlap collinearly)."""
    verts = poly.vertices
    n = len(verts)
    if n < 3:
        return False
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    boxes = [
        (min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1]))
        for a, b in edges
    ]
    for i in range(n):
        a, b = edges[i]
        if a == b:
            return False
        bi = boxes[i]
        for j in range(i + 1, n):
            bj = boxes[j]
            if bi[2] < bj[0] or bj[2] < bi[0] or bi[3] < bj[1] or bj[3] < bi[1]:
                continue
            c, d = edges[j]
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                shared = b if j == i + 1 else a
                other_i = a if j == i + 1 else b
                other_j = d if j == i + 1 else c
                # A spike (the two edges folding back onto each other) is the
                # only illegal contact between adjacent edges.
                if _orient(*shared, *other_i, *other_j) == 0 and (
                    _on_segment(*shared, *other_i, *other_j)
                    or _on_segment(*shared, *other_j, *other_i)
                ):
                    return False
            elif _segments_touch(a, b, c, d):
                return False
    return True
