"""Spiral arc geometry: endpoint exactness, clockwise side constancy,
curvature homing, arrowheads, and pair separation."""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from relocviz.arcs import (
    ArcParams,
    arrowhead,
    arrowheads_for,
    discrete_curvature,
    spiral_arc,
)

DEFAULTS = ArcParams()


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


class TestSpiralArc:
    def test_horizontal_arc_shape(self):
        arc = spiral_arc((0.0, 0.0), (100.0, 0.0))
        pts = arc.points
        assert pts[0].tolist() == [0.0, 0.0]
        assert pts[-1].tolist() == [100.0, 0.0]
        # bulge is toward -y (clockwise side for +x travel)
        assert (pts[1:-1, 1] < 0).all()
        # sampled peak approaches the analytic bulge * L, reached past midway
        peak_idx = int(np.argmax(-pts[:, 1]))
        assert -pts[peak_idx, 1] == pytest.approx(18.0, abs=0.1)
        assert peak_idx / DEFAULTS.samples == pytest.approx(0.5 ** (1 / 2.5), abs=0.02)

    def test_analytic_peak_offset(self):
        # At t* = (1/2)^(1/shape) the sine term is exactly 1.
        t_star = 0.5 ** (1 / DEFAULTS.shape)
        assert math.sin(math.pi * t_star**DEFAULTS.shape) == pytest.approx(1.0, abs=1e-12)

    def test_midpoint_side(self):
        arc = spiral_arc((0.0, 0.0), (100.0, 0.0))
        mid = arc.points[DEFAULTS.samples // 2]
        assert cross(100.0, 0.0, mid[0], mid[1]) < 0
        assert mid[1] == pytest.approx(-18.0 * math.sin(math.pi * 0.5**2.5), abs=1e-9)

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError, match="source equals target"):
            spiral_arc((5.0, 5.0), (5.0, 5.0))

    def test_endpoints_bit_exact_random(self):
        rng = random.Random(7)
        for _ in range(50):
            s = (rng.uniform(-500, 500), rng.uniform(-500, 500))
            t = (rng.uniform(-500, 500), rng.uniform(-500, 500))
            if s == t:
                continue
            arc = spiral_arc(s, t)
            assert arc.points[0].tolist() == [s[0], s[1]]
            assert arc.points[-1].tolist() == [t[0], t[1]]

    def test_constant_clockwise_side(self):
        rng = random.Random(21)
        for _ in range(32):
            s = (rng.uniform(-300, 300), rng.uniform(-300, 300))
            ang = rng.uniform(0, 2 * math.pi)
            length = rng.choice([50.0, 100.0, 200.0, 500.0])
            t = (s[0] + length * math.cos(ang), s[1] + length * math.sin(ang))
            pts = spiral_arc(s, t).points
            d = (t[0] - s[0], t[1] - s[1])
            sides = [
                cross(d[0], d[1], px - s[0], py - s[1]) for px, py in pts[1:-1]
            ]
            assert all(v <= 1e-9 for v in sides)
            assert min(sides) < 0  # strictly off-chord at the peak

    def test_scale_equivariance(self):
        s, t = (3.0, 4.0), (103.0, 54.0)
        base = spiral_arc(s, t).points
        for c in (2.0, 0.5, 8.0):
            scaled = spiral_arc((s[0] * c, s[1] * c), (t[0] * c, t[1] * c)).points
            assert np.allclose(scaled, base * c, rtol=0, atol=1e-9 * c)

    def test_polyline_is_simple(self):
        # Projection onto the chord is strictly increasing, so no self-crossing.
        pts = spiral_arc((0.0, 0.0), (100.0, 40.0)).points
        d = np.array([100.0, 40.0])
        proj = pts @ d
        assert (np.diff(proj) > 0).all()


class TestCurvature:
    def test_collinear_is_zero(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.5, 0.0]])
        assert discrete_curvature(pts).tolist() == [0.0, 0.0]

    def test_circle_curvature(self):
        r = 50.0
        theta = np.linspace(0, math.pi, 100)
        pts = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1)
        kappa = discrete_curvature(pts)
        assert np.allclose(kappa, 1 / r, rtol=0.01)

    def test_repeated_point_gives_zero(self):
        pts = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]])
        assert discrete_curvature(pts)[0] == 0.0

    @pytest.mark.parametrize("length", [50.0, 100.0, 200.0, 500.0])
    def test_curvature_concentrates_toward_target(self, length):
        pts = spiral_arc((0.0, 0.0), (length, 0.0)).points
        kappa = discrete_curvature(pts)
        argmax_t = (int(np.argmax(kappa)) + 1) / DEFAULTS.samples
        assert argmax_t >= 0.5


class TestArrowhead:
    def test_horizontal(self):
        tri = arrowhead((100.0, 0.0), (1.0, 0.0))
        apex, b1, b2 = tri.tolist()
        assert apex == [100.0, 0.0]
        half_w = 8.0 * math.tan(math.radians(25.0))
        assert b1 == pytest.approx([92.0, -half_w])
        assert b2 == pytest.approx([92.0, half_w])

    def test_rotation_equivariance(self):
        base = arrowhead((0.0, 0.0), (1.0, 0.0))
        rotated = arrowhead((0.0, 0.0), (0.0, 1.0))
        # rotate base by +90 degrees in screen coordinates: (x, y) -> (-y, x)
        expected = np.stack([-base[:, 1], base[:, 0]], axis=1)
        assert np.allclose(rotated, expected, atol=1e-12)

    def test_zero_tangent_rejected(self):
        with pytest.raises(ValueError, match="unit vector"):
            arrowhead((0.0, 0.0), (0.0, 0.0))

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError, match="unit vector"):
            arrowhead((0.0, 0.0), (2.0, 0.0))

    def test_batch_matches_single(self):
        rng = random.Random(31)
        ends = []
        tangents = []
        for _ in range(10):
            ang = rng.uniform(0, 2 * math.pi)
            ends.append((rng.uniform(-50, 50), rng.uniform(-50, 50)))
            tangents.append((math.cos(ang), math.sin(ang)))
        batch = arrowheads_for(np.array(ends), np.array(tangents), DEFAULTS)
        for k in range(10):
            single = arrowhead(ends[k], tangents[k], DEFAULTS)
            assert np.array_equal(batch[k], single)


class TestPairSeparation:
    def test_opposite_directions_never_overlap(self):
        rng = random.Random(5)
        params = DEFAULTS
        for _ in range(16):
            s = (rng.uniform(-200, 200), rng.uniform(-200, 200))
            ang = rng.uniform(0, 2 * math.pi)
            length = rng.choice([50.0, 100.0, 200.0, 500.0])
            t = (s[0] + length * math.cos(ang), s[1] + length * math.sin(ang))
            fwd = spiral_arc(s, t, params).points
            rev = spiral_arc(t, s, params).points
            lo = int(0.1 * params.samples)
            hi = int(0.9 * params.samples) + 1
            a = fwd[lo:hi]
            b = rev[lo:hi]
            d2 = ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
            assert math.sqrt(float(d2.min())) > 0.0


class TestParams:
    def test_invalid(self):
        with pytest.raises(ValueError):
            ArcParams(bulge=0.0)
        with pytest.raises(ValueError):
            ArcParams(shape=1.0)
        with pytest.raises(ValueError):
            ArcParams(samples=8)
