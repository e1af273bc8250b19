"""Sparse weighted least-squares refinement of tethered trajectories."""

from src.optimizer.config import OptConfig
from src.optimizer.factors import (
    Factor,
    FactorKind,
    residual_acceleration,
    residual_equidistance,
    residual_kinematics,
    residual_tether,
    residual_time,
    residual_uav_obstacle,
    residual_velocity,
)
from src.optimizer.levenberg_marquardt import (
    IterationRecord,
    LevenbergMarquardt,
    SolveReport,
    TerminationReason,
    solve,
)
from src.optimizer.problem import OptProblem, build_problem, cost_by_kind, total_cost
from src.optimizer.trace import write_trace

__all__ = [
    "Factor",
    "FactorKind",
    "IterationRecord",
    "LevenbergMarquardt",
    "OptConfig",
    "OptProblem",
    "SolveReport",
    "TerminationReason",
    "build_problem",
    "cost_by_kind",
    "residual_acceleration",
    "residual_equidistance",
    "residual_kinematics",
    "residual_tether",
    "residual_time",
    "residual_uav_obstacle",
    "residual_velocity",
    "solve",
    "total_cost",
    "write_trace",
]
