"""Spiral relocation arcs: sampled polylines that leave the source flat and
home in on the target with ever-increasing curvature, always bowing to the
clockwise side of travel (screen coordinates, y down).

The path for chord d = T - S of length L, clockwise normal
n = (d.y, -d.x) / L, and parameters (bulge, shape, samples) is

    P(t) = S + t*d + bulge * L * sin(pi * t**shape) * n,  t in [0, 1].

The sine bulge vanishes exactly at both ends; shape > 1 pushes the bend
toward the target, so the two directions of a building pair bow to opposite
sides of their shared chord and never overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Vec = tuple[float, float]


@dataclass(frozen=True, slots=True)
class ArcParams:
    bulge: float = 0.18  # peak offset as a fraction of chord length
    shape: float = 2.5  # exponent shifting curvature toward the target
    samples: int = 64  # polyline segments (samples + 1 points)
    arrow_length: float = 8.0  # px
    arrow_half_angle: float = 25.0  # degrees

    def __post_init__(self) -> None:
        if self.bulge <= 0:
            raise ValueError("bulge must be positive")
        if self.shape <= 1:
            raise ValueError("shape exponent must exceed 1")
        if self.samples < 16:
            raise ValueError("need at least 16 segments")


@dataclass(frozen=True, slots=True)
class ArcPath:
    """Sampled arc with an arrowhead triangle at the target end."""

    points: np.ndarray  # (samples + 1, 2) float64, read-only
    arrowhead: np.ndarray  # (3, 2) float64: apex, then base corners


def sample_spiral_arcs(
    sources: np.ndarray, targets: np.ndarray, params: ArcParams
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized sampling of K arcs at once.

    Returns (points, end_tangents): points has shape (K, samples + 1, 2) with
    rows 0 and -1 set to the exact source/target coordinates; end_tangents
    holds the unit path tangent at each target, for arrowhead alignment.
    """
    src = np.asarray(sources, dtype=np.float64).reshape(-1, 2)
    dst = np.asarray(targets, dtype=np.float64).reshape(-1, 2)
    d = dst - src
    length = np.hypot(d[:, 0], d[:, 1])
    if (length == 0).any():
        raise ValueError("degenerate arc: source equals target")
    normal = np.stack([d[:, 1], -d[:, 0]], axis=1) / length[:, None]

    m = params.samples
    t = np.linspace(0.0, 1.0, m + 1)
    offset = np.sin(np.pi * t**params.shape)
    offset[0] = 0.0
    offset[-1] = 0.0

    points = (
        src[:, None, :]
        + t[None, :, None] * d[:, None, :]
        + (params.bulge * length)[:, None, None] * offset[None, :, None] * normal[:, None, :]
    )
    points[:, 0, :] = src
    points[:, -1, :] = dst

    # dP/dt at t=1: d - bulge * L * pi * shape * n  (cos(pi) = -1).
    tangent = d - (params.bulge * length * math.pi * params.shape)[:, None] * normal
    tangent /= np.hypot(tangent[:, 0], tangent[:, 1])[:, None]
    return points, tangent


def arrowheads_for(ends: np.ndarray, tangents: np.ndarray, params: ArcParams) -> np.ndarray:
    """Arrowhead triangles for K arcs at once; tangents must be unit rows.

    Returns shape (K, 3, 2): apex, then the two base corners, matching
    `arrowhead` exactly.
    """
    ends = np.asarray(ends, dtype=np.float64).reshape(-1, 2)
    tangents = np.asarray(tangents, dtype=np.float64).reshape(-1, 2)
    base = ends - params.arrow_length * tangents
    half_w = params.arrow_length * math.tan(math.radians(params.arrow_half_angle))
    normal = np.stack([tangents[:, 1], -tangents[:, 0]], axis=1)
    return np.stack([ends, base + half_w * normal, base - half_w * normal], axis=1)


def spiral_arc(source: Vec, target: Vec, params: ArcParams = ArcParams()) -> ArcPath:
    """One arc from source anchor to target anchor."""
    points, tangents = sample_spiral_arcs(
        np.array([source], dtype=np.float64),
        np.array([target], dtype=np.float64),
        params,
    )
    head = arrowhead(target, (float(tangents[0, 0]), float(tangents[0, 1])), params)
    pts = points[0]
    pts.setflags(write=False)
    return ArcPath(pts, head)


def arrowhead(end: Vec, tangent: Vec, params: ArcParams = ArcParams()) -> np.ndarray:
    """Isoceles arrowhead triangle: apex at `end`, base behind it along
    -tangent, opening per the configured half-angle. Tangent must be unit."""
    tx, ty = tangent
    norm = math.hypot(tx, ty)
    if not math.isfinite(norm) or abs(norm - 1.0) > 1e-9:
        raise ValueError("tangent must be a unit vector")
    ex, ey = end
    bx = ex - params.arrow_length * tx
    by = ey - params.arrow_length * ty
    half_w = params.arrow_length * math.tan(math.radians(params.arrow_half_angle))
    nx, ny = ty, -tx  # clockwise normal
    tri = np.array(
        [
            [ex, ey],
            [bx + half_w * nx, by + half_w * ny],
            [bx - half_w * nx, by - half_w * ny],
        ],
        dtype=np.float64,
    )
    tri.setflags(write=False)
    return tri


def discrete_curvature(points: np.ndarray) -> np.ndarray:
    """Menger curvature at each interior point of a polyline.

    kappa_i = 4 * area(P_{i-1}, P_i, P_{i+1}) / (|ab| * |bc| * |ac|), with 0
    where consecutive points repeat.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise ValueError("need at least 3 points")
    a, b, c = pts[:-2], pts[1:-1], pts[2:]
    ab = b - a
    bc = c - b
    ac = c - a
    cross = ab[:, 0] * ac[:, 1] - ab[:, 1] * ac[:, 0]
    denom = (
        np.hypot(ab[:, 0], ab[:, 1])
        * np.hypot(bc[:, 0], bc[:, 1])
        * np.hypot(ac[:, 0], ac[:, 1])
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = np.where(denom == 0, 0.0, 2.0 * np.abs(cross) / denom)
    return kappa
