"""Residuals of the seven factor types and the factor descriptor.

Every state owns five variables laid out as ``[x, y, z, l, dt]``. A factor
references a window of consecutive states and a subset of their variables.
"""

import math
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from src.catenary.clearance import min_tether_clearance
from src.catenary.solver import sample_tether
from src.optimizer.config import OptConfig
from src.world.world import World

STATE_SIZE = 5
LENGTH = 3
DT = 4


class FactorKind(StrEnum):
    EQUIDISTANCE = "equidistance"
    UAV_OBSTACLE = "uav_obstacle"
    KINEMATICS = "kinematics"
    TIME = "time"
    VELOCITY = "velocity"
    ACCELERATION = "acceleration"
    TETHER = "tether"


_WEIGHT_FIELDS = {
    FactorKind.EQUIDISTANCE: "gamma_eq",
    FactorKind.UAV_OBSTACLE: "gamma_o",
    FactorKind.KINEMATICS: "gamma_theta",
    FactorKind.TIME: "gamma_t",
    FactorKind.VELOCITY: "gamma_v",
    FactorKind.ACCELERATION: "gamma_a",
    FactorKind.TETHER: "gamma_l",
}

DIMENSIONS = {
    FactorKind.EQUIDISTANCE: 3,
    FactorKind.UAV_OBSTACLE: 1,
    FactorKind.KINEMATICS: 1,
    FactorKind.TIME: 1,
    FactorKind.VELOCITY: 1,
    FactorKind.ACCELERATION: 1,
    FactorKind.TETHER: 2,
}


def factor_weight(kind: FactorKind, cfg: OptConfig) -> float:
    """The weight gamma of a factor kind."""
    return float(getattr(cfg, _WEIGHT_FIELDS[kind]))


def _position_vars(state: int) -> list[int]:
    base = state * STATE_SIZE
    return [base, base + 1, base + 2]


class Factor(BaseModel):
    """One cost term over a window of consecutive states."""

    model_config = ConfigDict(frozen=True)

    kind: FactorKind
    states: tuple[int, ...] = Field(..., min_length=1, max_length=4)
    reference: float | None = Field(default=None, description="Initial dt for time factors")

    @property
    def dimension(self) -> int:
        return DIMENSIONS[self.kind]

    def variables(self) -> list[int]:
        """Flat indices of the variables this factor reads, in residual-argument order."""
        s = self.states
        match self.kind:
            case FactorKind.EQUIDISTANCE | FactorKind.UAV_OBSTACLE | FactorKind.KINEMATICS:
                return [v for state in s for v in _position_vars(state)]
            case FactorKind.TIME:
                return [s[0] * STATE_SIZE + DT]
            case FactorKind.VELOCITY:
                return [*_position_vars(s[0]), *_position_vars(s[1]), s[1] * STATE_SIZE + DT]
            case FactorKind.ACCELERATION:
                positions = [v for state in s for v in _position_vars(state)]
                return [*positions, s[1] * STATE_SIZE + DT, s[2] * STATE_SIZE + DT]
            case FactorKind.TETHER:
                return [*_position_vars(s[0]), s[0] * STATE_SIZE + LENGTH]
        raise AssertionError(self.kind)


# ============================================================================
# Residuals
# ============================================================================


def residual_equidistance(
    p0: NDArray[np.float64], p1: NDArray[np.float64], p2: NDArray[np.float64], p3: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Deviation of three consecutive spacings from their mean."""
    spacings = np.array(
        [np.linalg.norm(p0 - p1), np.linalg.norm(p1 - p2), np.linalg.norm(p2 - p3)], dtype=np.float64
    )
    return spacings.mean() - spacings


def residual_uav_obstacle_at(p: NDArray[np.float64], obstacle: NDArray[np.float64] | None, cfg: OptConfig) -> float:
    """Obstacle residual against a fixed witness point (``None`` for an empty world)."""
    if obstacle is None:
        return 0.0
    d = float(np.linalg.norm(p - obstacle))
    if d >= cfg.rho_o:
        return 0.0
    return math.exp(cfg.rho_a - cfg.beta * d)


def residual_uav_obstacle(p: NDArray[np.float64], w: World, cfg: OptConfig) -> float:
    """Exponential penalty once the nearest obstacle is closer than ``rho_o``.

    Jumps from ``exp(rho_a - beta*rho_o)`` to 0 at ``d = rho_o``.
    """
    _, obstacle = w.nearest_obstacle(p)
    return residual_uav_obstacle_at(p, obstacle, cfg)


def residual_kinematics(
    p0: NDArray[np.float64], p1: NDArray[np.float64], p2: NDArray[np.float64], cfg: OptConfig
) -> float:
    """Penalty ``1/|u.v|`` when the turn at ``p1`` exceeds ``rho_theta``, capped at the ceiling."""
    u, v = p1 - p0, p2 - p1
    nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    dot = float(u @ v)
    angle = math.acos(min(1.0, max(-1.0, dot / (nu * nv))))
    if angle <= cfg.rho_theta:
        return 0.0
    if dot == 0.0:
        return cfg.kinematics_ceiling
    return min(1.0 / abs(dot), cfg.kinematics_ceiling)


def residual_time(dt: float, dt0: float) -> float:
    """Pull of a time increment back to its initial value."""
    return dt0 - dt


def residual_velocity(p0: NDArray[np.float64], p1: NDArray[np.float64], dt: float, cfg: OptConfig) -> float:
    """Segment speed minus the desired speed."""
    return float(np.linalg.norm(p1 - p0)) / dt - cfg.rho_v


def residual_acceleration(
    p0: NDArray[np.float64], p1: NDArray[np.float64], p2: NDArray[np.float64], dt1: float, dt2: float
) -> float:
    """Change of speed magnitude over the two increments."""
    v_prev = float(np.linalg.norm(p1 - p0)) / dt1
    v_next = float(np.linalg.norm(p2 - p1)) / dt2
    return (v_next - v_prev) / (dt1 + dt2)


def tether_in_collision(
    p: NDArray[np.float64], length: float, w: World, cfg: OptConfig, anchor: NDArray[np.float64]
) -> bool:
    """Whether the tether at ``max(length, chord)`` comes closer than ``rho_l`` to an obstacle."""
    chord = float(np.linalg.norm(p - anchor))
    tether = sample_tether(anchor, p, max(length, chord), cfg.m)
    return min_tether_clearance(tether, w) < cfg.rho_l


def residual_tether_branch(
    p: NDArray[np.float64], length: float, collision: bool, cfg: OptConfig, anchor: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Tether residual for a known collision state."""
    chord = float(np.linalg.norm(p - anchor))
    if collision:
        return np.array(
            [cfg.tether_collision_gain * math.exp(cfg.tether_collision_rate * (chord - length)), 0.0]
        )
    return np.array([0.0, length - chord])


def residual_tether(
    p: NDArray[np.float64], length: float, w: World, cfg: OptConfig, anchor: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Stretch a clear tether toward taut; lengthen a colliding one.

    Returns ``[gain*exp(rate*(chord - l)), 0]`` when the tether collides,
    else ``[0, l - chord]``.
    """
    return residual_tether_branch(p, length, tether_in_collision(p, length, w, cfg, anchor), cfg, anchor)
