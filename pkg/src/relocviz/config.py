"""Flat `key = value` configuration for style and arc parameter overrides.

Keys are the StyleParams / ArcParams field names; `#` comments and blank
lines are ignored. CLI `--set key=value` flags use the same key space and
take precedence over the file.
"""

from __future__ import annotations

from dataclasses import fields, replace

from .arcs import ArcParams
from .styling import StyleParams

_STYLE_FIELDS = {f.name: f.type for f in fields(StyleParams)}
_ARC_FIELDS = {f.name: f.type for f in fields(ArcParams)}


class ConfigError(ValueError):
    pass


def parse_overrides(text: str) -> dict[str, float]:
    """Parse flat key = value lines into a raw override mapping."""
    out: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value' (line {lineno})")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _STYLE_FIELDS and key not in _ARC_FIELDS:
            raise ConfigError(f"unknown parameter {key!r} (line {lineno})")
        try:
            out[key] = float(value)
        except ValueError:
            raise ConfigError(f"invalid number {value!r} for {key!r} (line {lineno})") from None
    return out


def apply_overrides(overrides: dict[str, float]) -> tuple[StyleParams, ArcParams]:
    """Build parameter sets from defaults plus overrides."""
    style_kw = {}
    arc_kw = {}
    for key, value in overrides.items():
        if key in _STYLE_FIELDS:
            style_kw[key] = value
        elif key in _ARC_FIELDS:
            arc_kw[key] = int(value) if key == "samples" else value
        else:
            raise ConfigError(f"unknown parameter {key!r}")
    try:
        return replace(StyleParams(), **style_kw), replace(ArcParams(), **arc_kw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_params(
    config_path: str | None, sets: list[str] | None = None
) -> tuple[StyleParams, ArcParams]:
    """Resolve parameters from an optional file plus --set key=value flags."""
    overrides: dict[str, float] = {}
    if config_path is not None:
        with open(config_path, "r", encoding="utf-8") as fh:
            overrides.update(parse_overrides(fh.read()))
    for item in sets or []:
        if "=" not in item:
            raise ConfigError(f"expected key=value, got {item!r}")
        key, _, value = item.partition("=")
        overrides.update(parse_overrides(f"{key} = {value}"))
    return apply_overrides(overrides)
