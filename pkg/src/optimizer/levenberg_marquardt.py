"""Levenberg-Marquardt over the sparse factor graph.

Each iteration freezes the nearest-obstacle witnesses and tether branches,
builds the finite-difference Jacobian, and solves the damped normal
equations ``(J^T J + lambda I) h = -J^T r``. A step is accepted when both the
actual and the predicted cost reduction are positive; the damping is divided
on acceptance and multiplied on rejection.
"""

from enum import StrEnum

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field
from scipy import sparse
from scipy.sparse.linalg import spsolve

from src.core.types import Trajectory, TrajectoryKind
from src.optimizer.config import OptConfig
from src.optimizer.problem import OptProblem, group_by_kind, sum_costs
from src.shared.metrics import record_lm_iteration, track_duration

logger = structlog.get_logger(__name__)


class TerminationReason(StrEnum):
    MAX_ITERATIONS = "max_iterations"
    RELATIVE_DECREASE = "relative_decrease"
    SMALL_STEP = "small_step"
    ZERO_COST = "zero_cost"
    DAMPING_LIMIT = "damping_limit"


class IterationRecord(BaseModel):
    """One attempted step."""

    model_config = ConfigDict(frozen=True)

    iteration: int = Field(..., ge=1)
    cost: float = Field(..., description="Cost after the attempt (unchanged when rejected)")
    damping: float
    step_norm: float
    accepted: bool
    predicted_reduction: float
    actual_reduction: float
    gain_ratio: float
    breakdown: dict[str, float] = Field(default_factory=dict)


class SolveReport(BaseModel):
    """Outcome of a full solve."""

    model_config = ConfigDict(frozen=True)

    iterations: int
    initial_cost: float
    final_cost: float
    reason: TerminationReason
    records: tuple[IterationRecord, ...]
    initial_breakdown: dict[str, float]
    final_breakdown: dict[str, float]
    trajectory: Trajectory

    @property
    def accepted_steps(self) -> int:
        return sum(1 for r in self.records if r.accepted)


class LevenbergMarquardt:
    """Damped Gauss-Newton solver configured by an ``OptConfig``."""

    def __init__(self, cfg: OptConfig) -> None:
        self.cfg = cfg

    def run(self, problem: OptProblem) -> SolveReport:
        """Refine ``problem`` in place and report the iterations.

        Raises:
            NumericalFailureError: If the cost at the start or at a candidate is not finite
        """
        cfg = self.cfg
        x = problem.x.copy()
        free = problem.free
        costs = problem.factor_costs(x)
        cost = sum_costs(costs)
        initial_cost = cost
        breakdown = group_by_kind(problem.factors, costs)
        initial_breakdown = breakdown
        damping = cfg.initial_damping
        records: list[IterationRecord] = []
        identity = sparse.identity(free.size, format="csc")
        reason = TerminationReason.MAX_ITERATIONS
        iterations = 0

        logger.info("Solve started", cost=initial_cost, free_variables=int(free.size), **initial_breakdown)
        if cost == 0.0:
            reason = TerminationReason.ZERO_COST

        while reason is TerminationReason.MAX_ITERATIONS and iterations < cfg.max_iterations:
            iterations += 1
            lin = problem.linearize(x)
            r = problem.weighted_residuals(x, lin)
            jac = problem.jacobian(x, lin)
            gradient = jac.T @ r
            hessian = (jac.T @ jac).tocsc()

            while True:
                step = np.atleast_1d(spsolve(hessian + damping * identity, -gradient))
                step_norm = float(np.linalg.norm(step))
                if step_norm < cfg.step_tolerance:
                    reason = TerminationReason.SMALL_STEP
                    break

                candidate = x.copy()
                candidate[free] += step
                candidate = problem.clamp(candidate)
                effective = candidate[free] - x[free]
                predicted = -float(2.0 * gradient @ effective + effective @ (hessian @ effective))
                candidate_costs = problem.factor_costs(candidate)
                new_cost = sum_costs(candidate_costs)
                actual = cost - new_cost
                accepted = actual > 0.0 and predicted > 0.0
                gain = actual / predicted if predicted > 0.0 else 0.0
                if accepted:
                    breakdown = group_by_kind(problem.factors, candidate_costs)

                record_lm_iteration(accepted)
                records.append(
                    IterationRecord(
                        iteration=iterations,
                        cost=new_cost if accepted else cost,
                        damping=damping,
                        step_norm=step_norm,
                        accepted=accepted,
                        predicted_reduction=predicted,
                        actual_reduction=actual,
                        gain_ratio=gain,
                        breakdown=breakdown,
                    )
                )
                logger.debug(
                    "LM step",
                    iteration=iterations,
                    cost=new_cost,
                    damping=damping,
                    step_norm=step_norm,
                    accepted=accepted,
                    gain_ratio=gain,
                )

                if accepted:
                    previous = cost
                    x, cost = candidate, new_cost
                    damping /= cfg.damping_decrease
                    if cost == 0.0:
                        reason = TerminationReason.ZERO_COST
                    elif actual / previous < cfg.relative_tolerance:
                        reason = TerminationReason.RELATIVE_DECREASE
                    break

                damping *= cfg.damping_increase
                if damping > cfg.max_damping:
                    reason = TerminationReason.DAMPING_LIMIT
                    break

        problem.x = x
        final_breakdown = breakdown
        trajectory = problem.to_trajectory(x, TrajectoryKind.OPTIMIZED)
        logger.info(
            "Solve finished",
            iterations=iterations,
            initial_cost=initial_cost,
            final_cost=cost,
            reason=reason.value,
            accepted_steps=sum(1 for rec in records if rec.accepted),
        )
        return SolveReport(
            iterations=iterations,
            initial_cost=initial_cost,
            final_cost=cost,
            reason=reason,
            records=tuple(records),
            initial_breakdown=initial_breakdown,
            final_breakdown=final_breakdown,
            trajectory=trajectory,
        )


@track_duration("optimize_duration_seconds")
def solve(prob: OptProblem) -> Trajectory:
    """Refine the problem's trajectory with Levenberg-Marquardt."""
    return LevenbergMarquardt(prob.cfg).run(prob).trajectory
