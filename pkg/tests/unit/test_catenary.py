"""Unit tests for the catenary solver, discretization and tether clearance."""

import math

import numpy as np
import pytest

from src.catenary.clearance import min_tether_clearance
from src.catenary.models import CatenaryKind
from src.catenary.solver import (
    discretize,
    sample_tether,
    scale_parameter,
    solve_catenary,
    tether_polyline,
    vertical_degenerate,
)
from src.core.types import ORIGIN, Point3
from src.shared.exceptions import InvalidLengthError, ValidationError
from src.world.cloud import ObstacleCloud
from src.world.world import World
from tests.fixtures.sample_data import create_empty_grid


def _oracle_scale(horizontal: float, rise: float, length: float) -> float:
    """Plain 200-step bisection on a fixed wide bracket."""
    target = math.sqrt(length**2 - rise**2)

    def f(a: float) -> float:
        x = horizontal / (2.0 * a)
        return math.inf if x > 700.0 else 2.0 * a * math.sinh(x) - target

    lo, hi = 1e-6, 1e6
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _random_instances(rng: np.random.Generator, count: int) -> list[tuple[Point3, Point3, float]]:
    """Random anchor pairs with chord in [0.5, 15] and slack factor in [1.001, 3]."""
    out = []
    for _ in range(count):
        chord = rng.uniform(0.5, 15.0)
        azimuth = rng.uniform(0.0, 2.0 * math.pi)
        elevation = rng.uniform(-math.radians(60.0), math.radians(80.0))
        offset = chord * np.array(
            [math.cos(elevation) * math.cos(azimuth), math.cos(elevation) * math.sin(azimuth), math.sin(elevation)]
        )
        a = rng.uniform(-5.0, 5.0, size=3)
        out.append((Point3.of(a), Point3.of(a + offset), chord * rng.uniform(1.001, 3.0)))
    return out


class TestSolveCatenary:
    """Test suite for solve_catenary."""

    def test_endpoint_interpolation(self, rng: np.random.Generator) -> None:
        """Test that solved curves pass through both anchors within 1e-4 m."""
        for a, b, length in _random_instances(rng, 1000):
            c = solve_catenary(a, b, length)

            np.testing.assert_allclose(c.point_at(0.0), a.as_array(), atol=1e-4)
            np.testing.assert_allclose(c.point_at(c.horizontal), b.as_array(), atol=1e-4)

    def test_root_matches_bisection_oracle(self, rng: np.random.Generator) -> None:
        """Test that the scale parameter matches an independent bisection."""
        for a, b, length in _random_instances(rng, 200):
            c = solve_catenary(a, b, length)
            if c.kind is not CatenaryKind.GENERAL:
                continue

            expected = _oracle_scale(c.horizontal, c.rise, length)

            assert c.param_a == pytest.approx(expected, rel=1e-8, abs=1e-8)

    def test_discretized_length_close_to_cable_length(self, rng: np.random.Generator) -> None:
        """Test that a 128-point polyline is within 1% of the cable length."""
        for a, b, length in _random_instances(rng, 300):
            polyline = discretize(solve_catenary(a, b, length), 128)

            assert polyline.length() == pytest.approx(length, rel=0.01)

    def test_closed_form_arc_length(self) -> None:
        """Test the closed-form arc length against the requested length."""
        c = solve_catenary(ORIGIN, Point3(x=4.0, y=3.0, z=2.0), 9.0)

        assert c.kind is CatenaryKind.GENERAL
        assert c.arc_length() == pytest.approx(9.0, rel=1e-9)

    def test_symmetric_lowest_point(self) -> None:
        """Test that a level cable sags symmetrically below its anchors."""
        c = solve_catenary(ORIGIN, Point3(x=4.0, y=0.0, z=0.0), 6.0)

        low = c.lowest_point()
        samples = discretize(c, 401).points

        assert low.x == pytest.approx(2.0)
        assert low.z < 0.0
        assert low.z == pytest.approx(samples[:, 2].min(), abs=1e-9)

    def test_taut_cable(self) -> None:
        """Test that a cable exactly as long as the chord is a straight segment."""
        b = Point3(x=3.0, y=0.0, z=4.0)

        c = solve_catenary(ORIGIN, b, 5.0)
        points = discretize(c, 11).points

        assert c.is_taut
        assert c.arc_length() == pytest.approx(5.0)
        np.testing.assert_allclose(points, np.linspace([0, 0, 0], [3, 0, 4], 11))

    def test_shorter_than_chord_rejected(self) -> None:
        """Test that a cable shorter than the chord raises InvalidLengthError."""
        with pytest.raises(InvalidLengthError) as exc_info:
            solve_catenary(ORIGIN, Point3(x=3.0, y=0.0, z=4.0), 4.9)

        assert exc_info.value.chord == pytest.approx(5.0)
        assert exc_info.value.length == 4.9

    def test_vertical_cable(self) -> None:
        """Test the doubled vertical model for stacked anchors."""
        c = solve_catenary(ORIGIN, Point3(x=0.0, y=0.0, z=3.0), 5.0)

        assert c.is_vertical
        assert c.lowest_point().z == pytest.approx(-1.0)

    def test_scale_parameter_flattens_with_less_slack(self) -> None:
        """Test that a tauter cable has a larger scale parameter."""
        slack = scale_parameter(4.0, 0.0, 6.0)
        tight = scale_parameter(4.0, 0.0, 4.2)

        assert tight > slack

    def test_curve_lies_in_vertical_anchor_plane(self, rng: np.random.Generator) -> None:
        """Test that every sample lies in the vertical plane through both anchors."""
        for a, b, length in _random_instances(rng, 200):
            c = solve_catenary(a, b, length)
            if c.is_vertical:
                continue
            dx, dy, _ = c.direction
            normal = np.array([-dy, dx, 0.0])

            points = discretize(c, 64).points

            np.testing.assert_allclose((points - a.as_array()) @ normal, 0.0, atol=1e-9)

    def test_arc_length_matches_quadrature(self) -> None:
        """Test the solved curve length against a 10^4-segment quadrature of its height profile."""
        c = solve_catenary(ORIGIN, Point3(x=1.0, y=1.0, z=1.0), 2.5)
        s = np.linspace(0.0, c.horizontal, 10_001)

        z = np.asarray(c.height(s))
        quadrature = float(np.hypot(np.diff(s), np.diff(z)).sum())

        assert quadrature == pytest.approx(2.5, abs=1e-4)

    @pytest.mark.parametrize("b", [Point3(x=4.0, y=0.0, z=0.0), Point3(x=4.0, y=0.0, z=2.0)])
    def test_sag_shrinks_as_length_approaches_chord(self, b: Point3) -> None:
        """Test that the maximum drop below the chord decreases with the cable length."""
        chord = float(np.linalg.norm(b.as_array()))
        sags = []
        for length in (2.0 * chord, 1.5 * chord, 1.2 * chord, 1.05 * chord, 1.01 * chord):
            c = solve_catenary(ORIGIN, b, length)
            s = np.linspace(0.0, c.horizontal, 2001)
            chord_z = b.z * s / c.horizontal
            sags.append(float((chord_z - np.asarray(c.height(s))).max()))

        assert all(later < earlier for earlier, later in zip(sags[:-1], sags[1:], strict=True))
        assert sags[-1] > 0.0


class TestDiscretize:
    """Test suite for discretize and vertical_degenerate."""

    def test_endpoints_exact(self) -> None:
        """Test that the first and last samples are exactly the anchors."""
        a, b = Point3(x=0.1, y=0.2, z=0.3), Point3(x=4.0, y=-1.0, z=2.5)

        points = discretize(solve_catenary(a, b, 7.0), 16).points

        assert tuple(points[0]) == a.as_tuple()
        assert tuple(points[-1]) == b.as_tuple()
        assert len(points) == 16

    def test_vertical_degenerate_shape(self) -> None:
        """Test the V shape of a slack vertical cable."""
        polyline = vertical_degenerate(ORIGIN, Point3(x=0.0, y=0.0, z=3.0), 5.0, 11)

        assert polyline.points[:, 2].min() == pytest.approx(-1.0)
        assert polyline.length() == pytest.approx(5.0)
        assert tuple(polyline.points[-1]) == (0.0, 0.0, 3.0)

    def test_zero_length_collapses_to_point(self) -> None:
        """Test that a zero-length cable between coincident anchors is a single point."""
        polyline = vertical_degenerate(ORIGIN, ORIGIN, 0.0, 8)

        assert len(polyline) == 1

    def test_needs_two_points(self) -> None:
        """Test that fewer than two samples is rejected."""
        with pytest.raises(ValidationError):
            discretize(solve_catenary(ORIGIN, Point3(x=1.0, y=0.0, z=0.0), 1.5), 1)

    def test_sample_tether_matches_models(self) -> None:
        """Test that the array fast path agrees with solve + discretize."""
        a, b = ORIGIN, Point3(x=3.0, y=2.0, z=1.5)

        fast = sample_tether(a.as_array(), b.as_array(), 6.0, 32)
        full = discretize(solve_catenary(a, b, 6.0), 32).points

        np.testing.assert_allclose(fast, full, atol=1e-12)

    def test_tether_polyline_picks_branch(self) -> None:
        """Test that tether_polyline handles taut and slack cables."""
        uav = Point3(x=3.0, y=0.0, z=4.0)

        taut = tether_polyline(ORIGIN, uav, 5.0, 8)
        slack = tether_polyline(ORIGIN, uav, 6.0, 8)

        assert taut.length() == pytest.approx(5.0)
        assert slack.length() > 5.0

    def test_polyline_length_grows_with_samples(self, rng: np.random.Generator) -> None:
        """Test that nested refinements lengthen the polyline without exceeding the cable."""
        for a, b, length in _random_instances(rng, 100):
            c = solve_catenary(a, b, length)

            lengths = [discretize(c, 2**k + 1).length() for k in range(1, 9)]

            assert np.all(np.diff(lengths) >= -1e-9)
            assert lengths[-1] <= length + 1e-9


class TestTetherClearance:
    """Test suite for min_tether_clearance."""

    def test_empty_world_is_infinite(self) -> None:
        """Test that clearance is infinite without obstacles."""
        world = World(create_empty_grid())

        clearance = min_tether_clearance(tether_polyline(ORIGIN, Point3(x=2.0, y=0.0, z=1.0), 3.0), world)

        assert clearance == math.inf

    def test_point_above_taut_tether(self) -> None:
        """Test clearance of a taut horizontal tether below a single obstacle."""
        world = World(create_empty_grid(), ObstacleCloud([[1.0, 0.0, 0.5]]))
        tether = tether_polyline(Point3(x=0.0, y=0.0, z=0.0), Point3(x=2.0, y=0.0, z=0.0), 2.0, 21)

        assert min_tether_clearance(tether, world) == pytest.approx(0.5)
        assert min_tether_clearance(tether.points, world) == pytest.approx(0.5)
