"""Shared geometric and numeric primitives."""

from src.core.geometry import distance, polyline_length
from src.core.types import ORIGIN, Point3, Trajectory, TrajectoryKind, TrajState

__all__ = [
    "ORIGIN",
    "Point3",
    "TrajState",
    "Trajectory",
    "TrajectoryKind",
    "distance",
    "polyline_length",
]
