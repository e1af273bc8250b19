"""Tether-aware global planning and initial trajectory construction."""

from src.planner.config import PlannerConfig
from src.planner.feasibility import FeasibilityCache, check_catenary_feasibility
from src.planner.interpolation import interpolate_path
from src.planner.lazy_theta import LazyThetaStar, PathNode, PlanResult, plan_path

__all__ = [
    "FeasibilityCache",
    "LazyThetaStar",
    "PathNode",
    "PlanResult",
    "PlannerConfig",
    "check_catenary_feasibility",
    "interpolate_path",
    "plan_path",
]
