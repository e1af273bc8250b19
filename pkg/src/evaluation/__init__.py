"""Trajectory evaluation metrics and comparison reports."""

from src.evaluation.metrics import (
    ComparisonReport,
    ComparisonRow,
    TrajectoryMetrics,
    compare,
    compute_metrics,
)
from src.evaluation.report import METRICS_COLUMNS, format_comparison, write_metrics_csv

__all__ = [
    "METRICS_COLUMNS",
    "ComparisonReport",
    "ComparisonRow",
    "TrajectoryMetrics",
    "compare",
    "compute_metrics",
    "format_comparison",
    "write_metrics_csv",
]
