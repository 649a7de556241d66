"""Raster images and binary PPM (P6, maxval 255) reading/writing."""

from __future__ import annotations

from dataclasses import dataclass

from .colors import Color


class PpmError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class RasterImage:
    """Row-major RGB image; `rgb` holds 3 bytes per pixel."""

    width: int
    height: int
    rgb: bytes

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        if len(self.rgb) != self.width * self.height * 3:
            raise ValueError("pixel buffer size does not match dimensions")

    def pixel(self, x: int, y: int) -> Color:
        i = (y * self.width + x) * 3
        return Color(self.rgb[i], self.rgb[i + 1], self.rgb[i + 2])

    @classmethod
    def filled(cls, width: int, height: int, color: Color) -> "RasterImage":
        return cls(width, height, bytes((color.r, color.g, color.b)) * (width * height))

    @classmethod
    def from_rows(cls, rows: list[list[Color]]) -> "RasterImage":
        height = len(rows)
        width = len(rows[0])
        buf = bytearray()
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged pixel rows")
            for c in row:
                buf += bytes((c.r, c.g, c.b))
        return cls(width, height, bytes(buf))


def _read_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping `#` comments."""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch in b" \t\r\n":
            pos += 1
        elif ch == b"#":
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in b" \t\r\n":
        pos += 1
    if start == pos:
        raise PpmError("truncated PPM header")
    return data[start:pos], pos


def parse_ppm(data: bytes) -> RasterImage:
    """Decode a binary PPM (magic P6, maxval 255)."""
    magic, pos = _read_token(data, 0)
    if magic != b"P6":
        raise PpmError(f"not a binary PPM (magic {magic[:8]!r})")
    fields = []
    for _ in range(3):
        tok, pos = _read_token(data, pos)
        try:
            fields.append(int(tok))
        except ValueError:
            raise PpmError(f"invalid PPM header token {tok!r}") from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise PpmError("invalid PPM dimensions")
    if maxval != 255:
        raise PpmError(f"unsupported maxval {maxval} (only 255)")
    pos += 1  # single whitespace byte after maxval
    expected = width * height * 3
    payload = data[pos : pos + expected]
    if len(payload) != expected:
        raise PpmError(f"truncated PPM payload ({len(payload)} of {expected} bytes)")
    return RasterImage(width, height, bytes(payload))


def write_ppm(img: RasterImage) -> bytes:
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.rgb
