"""Relocation-data computation: window aggregation, per-period totals,
link visibility, building summaries, and slider-window arithmetic.

Everything here is a pure function of immutable inputs. Diagonal matrix
entries (moves within one building) are legal data but never become links or
histogram mass; they surface only as a summary card's `internal` count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import RelocationSeries

BACKGROUND = "background"
FOCUS = "focus"


@dataclass(frozen=True, slots=True)
class TimeWindow:
    """Inclusive [lo, hi] range of 0-based period indices."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 0 or self.lo > self.hi:
            raise ValueError(f"invalid window [{self.lo}, {self.hi}]")

    def contains(self, t: int) -> bool:
        return self.lo <= t <= self.hi


@dataclass(frozen=True, slots=True)
class AggregateMatrix:
    """Element-wise sum of the series matrices over one window."""

    values: np.ndarray  # (N, N) int64, read-only
    window: TimeWindow

    @property
    def size(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, slots=True)
class Link:
    src: int
    dst: int
    count: int
    kind: str  # BACKGROUND or FOCUS


@dataclass(frozen=True, slots=True)
class SummaryCard:
    """Numerical summary of one building over the active window."""

    building: int
    window: TimeWindow
    out_total: int
    in_total: int
    net: int  # in - out
    internal: int  # diagonal entry: moves within the building
    partners: tuple[tuple[int, int, int], ...]  # (other id, out, in), busiest first


def aggregate(series: RelocationSeries, window: TimeWindow) -> AggregateMatrix:
    if window.hi >= series.period_count:
        raise ValueError(
            f"window [{window.lo}, {window.hi}] out of range for {series.period_count} periods"
        )
    values = series.matrices[window.lo : window.hi + 1].sum(axis=0)
    values.setflags(write=False)
    return AggregateMatrix(values, window)


def period_totals(series: RelocationSeries) -> list[int]:
    """Total off-diagonal relocations per period (histogram input)."""
    m = series.matrices
    totals = m.sum(axis=(1, 2)) - m.diagonal(axis1=1, axis2=2).sum(axis=1)
    return [int(v) for v in totals]


def visible_links(
    agg: AggregateMatrix,
    threshold: int,
    selected: frozenset[int] | set[int] = frozenset(),
    armed: int | None = None,
) -> list[Link]:
    """Links to draw for one aggregate.

    A nonzero ordered pair incident to a selected or armed building is always
    emitted as a focus link; any other pair appears as a background link only
    when it meets the threshold. Output is sorted by (src, dst).
    """
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    focus_ids = set(selected)
    if armed is not None:
        focus_ids.add(armed)

    values = agg.values
    links: list[Link] = []
    srcs, dsts = np.nonzero(values)
    for i, j in zip(srcs.tolist(), dsts.tolist()):
        if i == j:
            continue
        count = int(values[i, j])
        if i in focus_ids or j in focus_ids:
            links.append(Link(i, j, count, FOCUS))
        elif count >= threshold:
            links.append(Link(i, j, count, BACKGROUND))
    return links


def building_summary(agg: AggregateMatrix, building: int) -> SummaryCard:
    n = agg.size
    if not 0 <= building < n:
        raise ValueError(f"unknown building id {building}")
    values = agg.values
    row = values[building]
    col = values[:, building]
    internal = int(values[building, building])
    out_total = int(row.sum()) - internal
    in_total = int(col.sum()) - internal

    partners = []
    for other in range(n):
        if other == building:
            continue
        out_c = int(row[other])
        in_c = int(col[other])
        if out_c or in_c:
            partners.append((other, out_c, in_c))
    partners.sort(key=lambda p: (-(p[1] + p[2]), p[0]))

    return SummaryCard(
        building=building,
        window=agg.window,
        out_total=out_total,
        in_total=in_total,
        net=in_total - out_total,
        internal=internal,
        partners=tuple(partners),
    )


def shift_window(window: TimeWindow, delta: int, period_count: int) -> TimeWindow:
    """Slide the window by delta periods, clamped so its width is preserved
    and it stays inside [0, period_count - 1]."""
    if window.hi >= period_count:
        raise ValueError("window out of range")
    width = window.hi - window.lo
    lo = min(max(window.lo + delta, 0), period_count - 1 - width)
    return TimeWindow(lo, lo + width)
