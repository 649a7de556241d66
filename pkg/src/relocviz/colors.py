"""24-bit RGB colors, hex parsing, and RGB/HSL conversion.

Hue is expressed in degrees [0, 360); saturation and lightness in [0, 1].
"""

from __future__ import annotations

import colorsys
import re
from dataclasses import dataclass

_HEX_RE = re.compile(r"^[0-9a-fA-F]{6}$")


@dataclass(frozen=True, slots=True)
class Color:
    """One 24-bit RGB color with channels in [0, 255]."""

    r: int
    g: int
    b: int

    def __post_init__(self) -> None:
        for name, v in (("r", self.r), ("g", self.g), ("b", self.b)):
            if not isinstance(v, int) or not 0 <= v <= 255:
                raise ValueError(f"channel {name}={v!r} outside [0, 255]")

    @classmethod
    def from_hex(cls, text: str) -> "Color":
        """Parse an RRGGBB hex string (case-insensitive, no leading #)."""
        if not _HEX_RE.match(text):
            raise ValueError(f"malformed hex color {text!r}")
        n = int(text, 16)
        return cls((n >> 16) & 0xFF, (n >> 8) & 0xFF, n & 0xFF)

    def to_hex(self) -> str:
        return f"{self.r:02X}{self.g:02X}{self.b:02X}"

    def to_hsl(self) -> tuple[float, float, float]:
        """Return (hue degrees, saturation, lightness)."""
        h, l, s = colorsys.rgb_to_hls(self.r / 255.0, self.g / 255.0, self.b / 255.0)
        return (h * 360.0, s, l)

    @classmethod
    def from_hsl(cls, h: float, s: float, l: float) -> "Color":
        r, g, b = colorsys.hls_to_rgb((h % 360.0) / 360.0, l, s)
        return cls(round(r * 255), round(g * 255), round(b * 255))
