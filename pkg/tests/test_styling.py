"""Encoding-law tests: saturation ramp, context colors, thickness, histogram
heights, and layer assignment."""

from __future__ import annotations

import math
import random

import pytest

from relocviz.colors import Color
from relocviz.styling import (
    LAYER_BACKGROUND_ARCS,
    LAYER_CONTEXT,
    LAYER_DATA_BUILDINGS,
    LAYER_FOCUS_ARCS,
    LAYER_RAISED_BUILDINGS,
    StyleParams,
    arc_thickness,
    attention_level,
    context_color,
    histogram_height,
    layer_of,
    saturation,
)

P = StyleParams()


class TestAttentionLevel:
    @pytest.mark.parametrize(
        "selected,armed,level",
        [(False, False, 0), (False, True, 1), (True, False, 2), (True, True, 3)],
    )
    def test_mapping(self, selected, armed, level):
        assert attention_level(selected, armed) == level


class TestSaturation:
    def test_endpoints(self):
        assert abs(saturation(0, P) - 0.15) < 1e-12
        assert abs(saturation(3, P) - 0.90) < 1e-12

    def test_intermediate_values(self):
        assert saturation(1, P) == pytest.approx(0.15 * 6 ** (1 / 3), abs=1e-9)
        assert saturation(2, P) == pytest.approx(0.15 * 6 ** (2 / 3), abs=1e-9)
        assert saturation(1, P) == pytest.approx(0.2726, abs=1e-4)
        assert saturation(2, P) == pytest.approx(0.4953, abs=1e-4)

    def test_geometric_ratio_constant(self):
        ratios = [saturation(l + 1, P) / saturation(l, P) for l in range(3)]
        for r in ratios:
            assert r == pytest.approx(6 ** (1 / 3), rel=1e-9)

    def test_strictly_increasing(self):
        values = [saturation(l, P) for l in range(4)]
        assert values == sorted(values)
        assert len(set(values)) == 4


class TestContextColor:
    def test_black(self):
        h, s, l = context_color(Color(0, 0, 0), P)
        assert s == 0.0
        assert l == pytest.approx(0.65)

    def test_white(self):
        h, s, l = context_color(Color(255, 255, 255), P)
        assert s == 0.0
        assert l == pytest.approx(0.85)

    def test_saturated_red(self):
        h, s, l = context_color(Color(255, 0, 0), P)
        assert h == pytest.approx(0.0)
        assert s == pytest.approx(0.08)
        assert l == pytest.approx(0.75)

    def test_hue_preserved(self):
        for color, hue in [(Color(0, 255, 0), 120.0), (Color(0, 0, 255), 240.0)]:
            h, _, _ = context_color(color, P)
            assert h == pytest.approx(hue)

    def test_bounds_hold_for_random_sample(self):
        rng = random.Random(42)
        for _ in range(100_000):
            c = Color(rng.randrange(256), rng.randrange(256), rng.randrange(256))
            _, s, l = context_color(c, P)
            assert s <= P.context_saturation_cap + 1e-12
            assert P.context_lightness_min - 1e-12 <= l <= P.context_lightness_max + 1e-12


class TestArcThickness:
    def test_count_one_is_minimum(self):
        assert arc_thickness(1, P) == P.w_min

    def test_count_100_spans_to_five(self):
        assert arc_thickness(100, P) == pytest.approx(5.0, abs=1e-9)

    def test_clamped_at_max(self):
        assert arc_thickness(10**6, P) == P.w_max

    def test_monotone(self):
        values = [arc_thickness(c, P) for c in range(1, 20000, 37)]
        assert values == sorted(values)

    def test_decade_distinctiveness(self):
        # Unclamped decades differ by a constant gain * ln 10.
        for n in (1, 2, 5, 10):
            d = arc_thickness(10 * n, P) - arc_thickness(n, P)
            assert d == pytest.approx(P.thickness_gain * math.log(10), rel=1e-9)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            arc_thickness(0, P)


class TestHistogramHeight:
    def test_zero(self):
        assert histogram_height(0, 14, P) == 0.0

    def test_max(self):
        assert histogram_height(14, 14, P) == P.histogram_max_height

    def test_mid_value(self):
        expected = 40 * math.log(9) / math.log(15)
        assert histogram_height(8, 14, P) == pytest.approx(expected, abs=1e-9)
        assert histogram_height(8, 14, P) == pytest.approx(32.45, abs=0.01)

    def test_all_zero_periods(self):
        assert histogram_height(0, 0, P) == 0.0

    def test_monotone(self):
        values = [histogram_height(c, 50, P) for c in range(51)]
        assert values == sorted(values)


class TestLayers:
    def test_assignments(self):
        assert layer_of("context") == LAYER_CONTEXT
        assert layer_of("arc", 0) == LAYER_BACKGROUND_ARCS
        assert layer_of("arc", 1) == LAYER_FOCUS_ARCS
        assert layer_of("arc", 3) == LAYER_FOCUS_ARCS
        assert layer_of("building", 0) == LAYER_DATA_BUILDINGS
        assert layer_of("building", 2) == LAYER_RAISED_BUILDINGS

    def test_ordering_background_below_buildings_below_focus(self):
        assert layer_of("arc", 0) < layer_of("building", 0) < layer_of("arc", 1)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            layer_of("widget", 0)


class TestParams:
    def test_default_gain_spans_two_decades(self):
        assert P.thickness_gain == pytest.approx(4.0 / math.log(100))

    def test_invalid_params_rejected(self):
        with pytest.raises(ValueError):
            StyleParams(s0=0.9, s3=0.2)
        with pytest.raises(ValueError):
            StyleParams(w_min=5.0, w_max=2.0)
