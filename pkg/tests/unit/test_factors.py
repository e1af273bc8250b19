"""Unit tests for the seven factor residuals and factor descriptors."""

import math

import numpy as np
import pytest

from src.optimizer.config import OptConfig
from src.optimizer.factors import (
    DIMENSIONS,
    Factor,
    FactorKind,
    factor_weight,
    residual_acceleration,
    residual_equidistance,
    residual_kinematics,
    residual_tether,
    residual_tether_branch,
    residual_time,
    residual_uav_obstacle,
    residual_velocity,
    tether_in_collision,
)
from src.world.cloud import ObstacleCloud
from src.world.world import World
from tests.fixtures.sample_data import create_empty_grid

ANCHOR = np.zeros(3)


def _p(x: float, y: float = 0.0, z: float = 0.0) -> np.ndarray:
    return np.array([x, y, z], dtype=np.float64)


def _point_world(*points: tuple[float, float, float]) -> World:
    return World(create_empty_grid(), ObstacleCloud(list(points)))


class TestEquidistance:
    """Test suite for residual_equidistance."""

    def test_equal_spacing_is_zero(self) -> None:
        """Test that equally spaced collinear points have no residual."""
        np.testing.assert_array_equal(residual_equidistance(_p(0), _p(1), _p(2), _p(3)), [0.0, 0.0, 0.0])

    def test_uneven_spacing(self) -> None:
        """Test spacings (1, 1, 4) against their mean of 2."""
        np.testing.assert_allclose(residual_equidistance(_p(0), _p(1), _p(2), _p(6)), [1.0, 1.0, -2.0])

    def test_components_sum_to_zero(self, rng: np.random.Generator) -> None:
        """Test that the residual components always cancel."""
        for _ in range(200):
            quad = rng.normal(size=(4, 3))

            assert residual_equidistance(*quad).sum() == pytest.approx(0.0, abs=1e-12)


class TestUavObstacle:
    """Test suite for residual_uav_obstacle."""

    def test_beyond_activation_distance(self, opt_config: OptConfig) -> None:
        """Test that an obstacle 2 m away contributes nothing."""
        assert residual_uav_obstacle(_p(0), _point_world((2.0, 0.0, 0.0)), opt_config) == 0.0

    def test_exponential_inside_activation_distance(self, opt_config: OptConfig) -> None:
        """Test the value exp(1 - 4 * 0.5) at half a meter."""
        residual = residual_uav_obstacle(_p(0), _point_world((0.0, 0.5, 0.0)), opt_config)

        assert residual == pytest.approx(math.exp(-1.0))

    def test_contact_is_finite(self, opt_config: OptConfig) -> None:
        """Test that touching an obstacle gives exp(rho_a)."""
        assert residual_uav_obstacle(_p(1), _point_world((1.0, 0.0, 0.0)), opt_config) == pytest.approx(math.e)

    def test_empty_world(self, opt_config: OptConfig, empty_world: World) -> None:
        """Test that an obstacle-free world never penalizes."""
        assert residual_uav_obstacle(_p(0), empty_world, opt_config) == 0.0


class TestKinematics:
    """Test suite for residual_kinematics."""

    def test_straight_motion(self, opt_config: OptConfig) -> None:
        """Test that collinear forward motion is free."""
        assert residual_kinematics(_p(0), _p(1), _p(2), opt_config) == 0.0

    def test_right_angle_hits_ceiling(self, opt_config: OptConfig) -> None:
        """Test that a 90 degree turn is capped at the ceiling."""
        assert residual_kinematics(_p(0), _p(1), _p(1, 1), opt_config) == opt_config.kinematics_ceiling

    def test_forty_five_degree_turn(self, opt_config: OptConfig) -> None:
        """Test u = (1, 0, 0), v = (0.5, 0.5, 0): above the bound, residual 1 / 0.5."""
        assert residual_kinematics(_p(0), _p(1), _p(1.5, 0.5), opt_config) == pytest.approx(2.0)

    def test_gentle_turn_below_bound(self, opt_config: OptConfig) -> None:
        """Test that a 20 degree turn is within the bound."""
        angle = math.radians(20.0)

        assert residual_kinematics(_p(0), _p(1), _p(1 + math.cos(angle), math.sin(angle)), opt_config) == 0.0

    def test_reversal_uses_magnitude(self, opt_config: OptConfig) -> None:
        """Test that turning back drops the sign of the dot product."""
        assert residual_kinematics(_p(0), _p(2), _p(0), opt_config) == pytest.approx(0.25)

    def test_coincident_points(self, opt_config: OptConfig) -> None:
        """Test that a zero-length segment is not penalized."""
        assert residual_kinematics(_p(0), _p(0), _p(1), opt_config) == 0.0


class TestMotionResiduals:
    """Test suite for the time, velocity and acceleration residuals."""

    def test_time(self) -> None:
        """Test the pull toward the initial increment."""
        assert residual_time(0.5, 0.5) == 0.0
        assert residual_time(0.4, 0.5) == pytest.approx(0.1)

    def test_velocity(self, opt_config: OptConfig) -> None:
        """Test speeds at, below and at zero relative to the desired speed."""
        assert residual_velocity(_p(0), _p(1), 0.5, opt_config) == 0.0
        assert residual_velocity(_p(0), _p(1), 1.0, opt_config) == -1.0
        assert residual_velocity(_p(3), _p(3), 0.5, opt_config) == -opt_config.rho_v

    def test_acceleration(self) -> None:
        """Test speeds 2 then 3 over half-second increments."""
        assert residual_acceleration(_p(0), _p(1), _p(2.5), 0.5, 0.5) == pytest.approx(1.0)
        assert residual_acceleration(_p(0), _p(1), _p(2), 0.5, 0.5) == 0.0

    def test_acceleration_antisymmetric(self) -> None:
        """Test that swapping the two speeds flips the sign."""
        forward = residual_acceleration(_p(0), _p(1), _p(2.5), 0.5, 0.5)
        backward = residual_acceleration(_p(0), _p(1.5), _p(2.5), 0.5, 0.5)

        assert backward == pytest.approx(-forward)


class TestTether:
    """Test suite for residual_tether."""

    def test_taut_and_clear(self, opt_config: OptConfig, empty_world: World) -> None:
        """Test that a taut tether in free space has no residual."""
        np.testing.assert_array_equal(residual_tether(_p(3, 4), 5.0, empty_world, opt_config, ANCHOR), [0.0, 0.0])

    def test_slack_is_penalized(self, opt_config: OptConfig, empty_world: World) -> None:
        """Test that half a meter of slack in free space is the second component."""
        residual = residual_tether(_p(3, 4), 5.5, empty_world, opt_config, ANCHOR)

        np.testing.assert_allclose(residual, [0.0, 0.5])

    def test_collision_penalty(self, opt_config: OptConfig) -> None:
        """Test the collision branch for a taut tether brushing an obstacle."""
        world = _point_world((1.0, 0.0, 0.1))

        assert tether_in_collision(_p(2), 2.0, world, opt_config, ANCHOR)
        residual = residual_tether(_p(2), 2.0, world, opt_config, ANCHOR)

        np.testing.assert_allclose(residual, [1e4, 0.0])

    def test_collision_penalty_decays_with_length(self, opt_config: OptConfig) -> None:
        """Test that extra length shrinks the collision penalty exponentially."""
        residual = residual_tether_branch(_p(2), 2.1, True, opt_config, ANCHOR)

        assert residual[0] == pytest.approx(1e4 * math.exp(-1.0))

    def test_branches_are_exclusive(self, opt_config: OptConfig, rng: np.random.Generator) -> None:
        """Test that at most one residual component is non-zero."""
        world = _point_world((1.0, 0.2, 0.5), (2.0, -0.3, 1.0))
        for _ in range(50):
            p = rng.uniform(0.5, 3.0, size=3)
            chord = float(np.linalg.norm(p))

            residual = residual_tether(p, chord * rng.uniform(1.0, 1.3), world, opt_config, ANCHOR)

            assert residual[0] == 0.0 or residual[1] == 0.0


class TestFactor:
    """Test suite for factor descriptors."""

    @pytest.mark.parametrize(
        ("kind", "states", "expected"),
        [
            (FactorKind.EQUIDISTANCE, (0, 1, 2, 3), list(range(0, 3)) + list(range(5, 8)) + [10, 11, 12, 15, 16, 17]),
            (FactorKind.UAV_OBSTACLE, (2,), [10, 11, 12]),
            (FactorKind.TIME, (3,), [19]),
            (FactorKind.VELOCITY, (1, 2), [5, 6, 7, 10, 11, 12, 14]),
            (FactorKind.ACCELERATION, (0, 1, 2), [0, 1, 2, 5, 6, 7, 10, 11, 12, 9, 14]),
            (FactorKind.TETHER, (2,), [10, 11, 12, 13]),
        ],
    )
    def test_variables(self, kind: FactorKind, states: tuple[int, ...], expected: list[int]) -> None:
        """Test the flat variable indices read by each factor kind."""
        assert Factor(kind=kind, states=states).variables() == expected

    def test_dimensions_and_weights(self, opt_config: OptConfig) -> None:
        """Test residual sizes and the configured weights."""
        assert DIMENSIONS[FactorKind.EQUIDISTANCE] == 3
        assert Factor(kind=FactorKind.TETHER, states=(0,)).dimension == 2
        assert factor_weight(FactorKind.VELOCITY, opt_config) == 0.06
        assert factor_weight(FactorKind.TIME, OptConfig(gamma_t=0.5)) == 0.5
