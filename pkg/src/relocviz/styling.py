"""Numeric visual encodings: attention levels, saturation ramp, contrast-
budget context colors, logarithmic arc thickness and histogram heights, and
layer assignment.

The design reserves nearly all contrast for viewer-driven emphasis: context
shapes sit in a narrow lightness band at near-zero saturation, while data
buildings and arcs each own one hue whose saturation rises geometrically
with the attention paid to them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .colors import Color

# Attention levels, derived solely from the (selected, armed) flags.
LEVEL_BACKGROUND = 0
LEVEL_ARMED = 1
LEVEL_SELECTED = 2
LEVEL_SELECTED_ARMED = 3

# Paint layers, back to front.
LAYER_CONTEXT = 0
LAYER_BACKGROUND_ARCS = 1
LAYER_DATA_BUILDINGS = 2
LAYER_FOCUS_ARCS = 3
LAYER_RAISED_BUILDINGS = 4

Hsl = tuple[float, float, float]


@dataclass(frozen=True, slots=True)
class StyleParams:
    """All tunable encoding constants; defaults span counts 1..100 over
    thicknesses 1..5 px and attention levels 0..3 over saturations .15...90."""

    s0: float = 0.15  # saturation at attention level 0
    s3: float = 0.90  # saturation at attention level 3
    building_hue: float = 10.0  # degrees
    arc_hue: float = 210.0  # degrees
    context_saturation_cap: float = 0.08
    context_lightness_min: float = 0.65
    context_lightness_max: float = 0.85
    data_lightness: float = 0.5  # lightness for building/arc fills
    w_min: float = 1.0  # px
    w_max: float = 8.0  # px
    thickness_gain: float = 4.0 / math.log(100.0)
    histogram_max_height: float = 40.0  # px

    def __post_init__(self) -> None:
        if not 0 <= self.s0 < self.s3 <= 1:
            raise ValueError("need 0 <= s0 < s3 <= 1")
        if not self.w_min < self.w_max:
            raise ValueError("need w_min < w_max")
        if self.thickness_gain <= 0:
            raise ValueError("thickness gain must be positive")
        if self.histogram_max_height <= 0:
            raise ValueError("histogram height must be positive")
        if not self.context_lightness_min <= self.context_lightness_max:
            raise ValueError("context lightness range inverted")


def attention_level(selected: bool, armed: bool) -> int:
    """0 background, 1 armed, 2 selected, 3 selected+armed."""
    return (2 if selected else 0) + (1 if armed else 0)


def saturation(level: int, params: StyleParams) -> float:
    """Geometric interpolation from s0 (level 0) to s3 (level 3)."""
    if level not in (0, 1, 2, 3):
        raise ValueError(f"invalid attention level {level}")
    return params.s0 * (params.s3 / params.s0) ** (level / 3.0)


def context_color(source: Color, params: StyleParams) -> Hsl:
    """Map any source color into the low-contrast context band.

    Hue survives; saturation is clamped to the context cap and lightness is
    compressed affinely into the configured band.
    """
    h, s, l = source.to_hsl()
    lo, hi = params.context_lightness_min, params.context_lightness_max
    return (h, min(s, params.context_saturation_cap), lo + l * (hi - lo))


def arc_thickness(count: int, params: StyleParams) -> float:
    """Logarithmic width in pixels, clamped to [w_min, w_max]."""
    if count < 1:
        raise ValueError("link count must be >= 1")
    w = params.w_min + params.thickness_gain * math.log(count)
    return min(max(w, params.w_min), params.w_max)


def histogram_height(count: int, max_count: int, params: StyleParams) -> float:
    """Log-scaled bar height; 0 maps to 0 and max_count maps to the cap."""
    if count < 0 or count > max_count:
        raise ValueError("count must be within [0, max_count]")
    if max_count == 0:
        return 0.0
    return params.histogram_max_height * math.log1p(count) / math.log1p(max_count)


def layer_of(kind: str, level: int = LEVEL_BACKGROUND) -> int:
    """Paint layer for an element; arcs take the max level of their endpoints."""
    if kind == "context":
        return LAYER_CONTEXT
    if kind == "arc":
        return LAYER_BACKGROUND_ARCS if level == 0 else LAYER_FOCUS_ARCS
    if kind == "building":
        return LAYER_DATA_BUILDINGS if level == 0 else LAYER_RAISED_BUILDINGS
    raise ValueError(f"unknown element kind {kind!r}")
