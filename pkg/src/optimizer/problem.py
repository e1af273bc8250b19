"""Factor-graph problem over a trajectory.

The variable vector stacks ``[x, y, z, l, dt]`` per state. The start and goal
positions, the first tether length and the first time increment are fixed;
everything else is free.
"""

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy import sparse

from src.core.types import Trajectory, TrajectoryKind
from src.optimizer.config import OptConfig
from src.optimizer.factors import (
    DT,
    LENGTH,
    STATE_SIZE,
    Factor,
    FactorKind,
    factor_weight,
    residual_acceleration,
    residual_equidistance,
    residual_kinematics,
    residual_tether_branch,
    residual_time,
    residual_uav_obstacle_at,
    residual_velocity,
    tether_in_collision,
)
from src.shared.exceptions import NumericalFailureError, TooShortError
from src.world.world import World

logger = structlog.get_logger(__name__)

MIN_STATES = 5


def sum_costs(costs: list[float]) -> float:
    """Sum in factor order."""
    total = 0.0
    for value in costs:
        total += value
    return total


@dataclass(slots=True)
class Linearization:
    """Nearest obstacles and tether collision states frozen at one point."""

    obstacles: dict[int, NDArray[np.float64] | None] = field(default_factory=dict)
    tether_collision: dict[int, bool] = field(default_factory=dict)


class OptProblem:
    """Variables, factors and fixed mask of one trajectory refinement."""

    def __init__(
        self,
        trajectory: Trajectory,
        world: World,
        cfg: OptConfig,
        factors: list[Factor],
    ) -> None:
        self.world = world
        self.cfg = cfg
        self.anchor = trajectory.anchor
        self.n_states = len(trajectory)
        self.factors = tuple(factors)

        states = np.column_stack([trajectory.positions(), trajectory.tether_lengths(), trajectory.dts()])
        self.x: NDArray[np.float64] = states.reshape(-1).copy()

        fixed = np.zeros(self.x.size, dtype=bool)
        last = (self.n_states - 1) * STATE_SIZE
        fixed[0:3] = True
        fixed[last : last + 3] = True
        fixed[LENGTH] = True
        fixed[DT] = True
        self.fixed = fixed
        self.free = np.flatnonzero(~fixed)
        self._anchor = self.anchor.as_array()
        self._weights = np.array([math.sqrt(factor_weight(f.kind, cfg)) for f in self.factors])
        self._offsets = np.concatenate([[0], np.cumsum([f.dimension for f in self.factors])]).astype(int)

    @property
    def n_residuals(self) -> int:
        return int(self._offsets[-1])

    def _states(self, x: NDArray[np.float64] | None) -> NDArray[np.float64]:
        return (self.x if x is None else x).reshape(self.n_states, STATE_SIZE)

    # ------------------------------------------------------------------
    # Residuals
    # ------------------------------------------------------------------

    def linearize(self, x: NDArray[np.float64] | None = None) -> Linearization:
        """Freeze nearest-obstacle witnesses and tether branches at ``x``."""
        states = self._states(x)
        lin = Linearization()
        for i in range(self.n_states):
            p = states[i, :3]
            _, lin.obstacles[i] = self.world.nearest_obstacle(p)
            lin.tether_collision[i] = tether_in_collision(
                p, float(states[i, LENGTH]), self.world, self.cfg, self._anchor
            )
        return lin

    def _evaluate(self, factor: Factor, states: NDArray[np.float64], lin: Linearization | None) -> NDArray[np.float64]:
        s = factor.states
        pos = states[:, :3]
        cfg = self.cfg
        match factor.kind:
            case FactorKind.EQUIDISTANCE:
                return residual_equidistance(pos[s[0]], pos[s[1]], pos[s[2]], pos[s[3]])
            case FactorKind.UAV_OBSTACLE:
                if lin is None:
                    _, obstacle = self.world.nearest_obstacle(pos[s[0]])
                else:
                    obstacle = lin.obstacles[s[0]]
                value = residual_uav_obstacle_at(pos[s[0]], obstacle, cfg)
            case FactorKind.KINEMATICS:
                value = residual_kinematics(pos[s[0]], pos[s[1]], pos[s[2]], cfg)
            case FactorKind.TIME:
                value = residual_time(float(states[s[0], DT]), float(factor.reference or 0.0))
            case FactorKind.VELOCITY:
                value = residual_velocity(pos[s[0]], pos[s[1]], float(states[s[1], DT]), cfg)
            case FactorKind.ACCELERATION:
                value = residual_acceleration(
                    pos[s[0]], pos[s[1]], pos[s[2]], float(states[s[1], DT]), float(states[s[2], DT])
                )
            case FactorKind.TETHER:
                p, length = pos[s[0]], float(states[s[0], LENGTH])
                if lin is None:
                    collision = tether_in_collision(p, length, self.world, cfg, self._anchor)
                else:
                    collision = lin.tether_collision[s[0]]
                return residual_tether_branch(p, length, collision, cfg, self._anchor)
        return np.array([value], dtype=np.float64)

    def residual(self, index: int, x: NDArray[np.float64] | None = None) -> NDArray[np.float64]:
        """Unweighted residual of factor ``index`` with fresh world queries."""
        return self._evaluate(self.factors[index], self._states(x), None)

    def weighted_residuals(
        self, x: NDArray[np.float64] | None = None, lin: Linearization | None = None
    ) -> NDArray[np.float64]:
        """Stacked ``sqrt(gamma) * delta`` over all factors in index order."""
        states = self._states(x)
        out = np.empty(self.n_residuals, dtype=np.float64)
        for k, factor in enumerate(self.factors):
            out[self._offsets[k] : self._offsets[k + 1]] = self._weights[k] * self._evaluate(factor, states, lin)
        return out

    def factor_costs(self, x: NDArray[np.float64] | None = None) -> list[float]:
        """``gamma * ||delta||^2`` per factor.

        Raises:
            NumericalFailureError: If a residual is not finite
        """
        states = self._states(x)
        costs = []
        for k, factor in enumerate(self.factors):
            delta = self._evaluate(factor, states, None)
            if not np.all(np.isfinite(delta)):
                raise NumericalFailureError(
                    f"factor {k} ({factor.kind.value}) over states {factor.states} is not finite",
                    factor_index=k,
                    factor_kind=factor.kind.value,
                )
            costs.append(factor_weight(factor.kind, self.cfg) * float(delta @ delta))
        return costs

    def cost(self, x: NDArray[np.float64] | None = None) -> float:
        return sum_costs(self.factor_costs(x))

    # ------------------------------------------------------------------
    # Linear model
    # ------------------------------------------------------------------

    def jacobian(self, x: NDArray[np.float64], lin: Linearization) -> sparse.csr_matrix:
        """Central-difference Jacobian of the weighted residuals w.r.t. the free variables."""
        h = self.cfg.fd_step
        columns = np.full(self.x.size, -1, dtype=int)
        columns[self.free] = np.arange(self.free.size)
        work = x.copy()
        states = self._states(work)

        rows: list[NDArray[np.int_]] = []
        cols: list[NDArray[np.int_]] = []
        values: list[NDArray[np.float64]] = []
        for k, factor in enumerate(self.factors):
            row_ids = np.arange(self._offsets[k], self._offsets[k + 1])
            for var in factor.variables():
                col = columns[var]
                if col < 0:
                    continue
                original = work[var]
                work[var] = original + h
                forward = self._evaluate(factor, states, lin)
                work[var] = original - h
                backward = self._evaluate(factor, states, lin)
                work[var] = original
                derivative = self._weights[k] * (forward - backward) / (2.0 * h)
                rows.append(row_ids)
                cols.append(np.full(row_ids.size, col))
                values.append(derivative)

        shape = (self.n_residuals, self.free.size)
        if not rows:
            return sparse.csr_matrix(shape)
        return sparse.coo_matrix(
            (np.concatenate(values), (np.concatenate(rows), np.concatenate(cols))), shape=shape
        ).tocsr()

    # ------------------------------------------------------------------
    # Variables
    # ------------------------------------------------------------------

    def clamp(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        """Keep free dt above ``dt_min`` and free tether lengths within ``[chord, l_max]``."""
        out = x.copy()
        states = self._states(out)
        free = ~self.fixed.reshape(self.n_states, STATE_SIZE)
        chords = np.linalg.norm(states[:, :3] - self._anchor, axis=1)

        dt_free = free[:, DT]
        states[dt_free, DT] = np.maximum(states[dt_free, DT], self.cfg.dt_min)
        l_free = free[:, LENGTH]
        bounded = np.minimum(states[l_free, LENGTH], self.cfg.l_max)
        states[l_free, LENGTH] = np.maximum(bounded, chords[l_free])
        return out

    def to_trajectory(
        self, x: NDArray[np.float64] | None = None, kind: TrajectoryKind = TrajectoryKind.OPTIMIZED
    ) -> Trajectory:
        states = self._states(x)
        return Trajectory.from_arrays(
            states[:, :3], states[:, LENGTH], states[:, DT], anchor=self.anchor, kind=kind
        )


def build_problem(t: Trajectory, w: World, cfg: OptConfig) -> OptProblem:
    """Instantiate every factor at every valid window of ``t``.

    Raises:
        TooShortError: If the trajectory has fewer than five states
    """
    n = len(t)
    if n < MIN_STATES:
        raise TooShortError(
            f"trajectory has {n} states, optimization needs at least {MIN_STATES}",
            states=n,
            required=MIN_STATES,
        )
    dts = t.dts()
    factors: list[Factor] = []
    factors += [Factor(kind=FactorKind.EQUIDISTANCE, states=(i - 2, i - 1, i, i + 1)) for i in range(2, n - 1)]
    factors += [Factor(kind=FactorKind.UAV_OBSTACLE, states=(i,)) for i in range(n)]
    factors += [Factor(kind=FactorKind.KINEMATICS, states=(i - 1, i, i + 1)) for i in range(1, n - 1)]
    factors += [Factor(kind=FactorKind.TIME, states=(i,), reference=float(dts[i])) for i in range(1, n)]
    factors += [Factor(kind=FactorKind.VELOCITY, states=(i, i + 1)) for i in range(n - 1)]
    factors += [Factor(kind=FactorKind.ACCELERATION, states=(i - 1, i, i + 1)) for i in range(1, n - 1)]
    factors += [Factor(kind=FactorKind.TETHER, states=(i,)) for i in range(n)]

    problem = OptProblem(t, w, cfg, factors)
    counts = Counter(f.kind.value for f in factors)
    logger.info("Problem built", states=n, free_variables=int(problem.free.size), **counts)
    return problem


def total_cost(prob: OptProblem) -> float:
    """Weighted sum of squared residuals at the problem's current variables."""
    return prob.cost()


def group_by_kind(factors: tuple[Factor, ...], costs: list[float]) -> dict[str, float]:
    breakdown = {kind.value: 0.0 for kind in FactorKind}
    for factor, value in zip(factors, costs, strict=True):
        breakdown[factor.kind.value] += value
    return breakdown


def cost_by_kind(prob: OptProblem, x: NDArray[np.float64] | None = None) -> dict[str, float]:
    """Cost contribution of each factor kind."""
    return group_by_kind(prob.factors, prob.factor_costs(x))
