"""Metrics CSV and plain-text comparison report."""

import csv
from pathlib import Path

import structlog

from src.evaluation.metrics import ComparisonReport, TrajectoryMetrics

logger = structlog.get_logger(__name__)

METRICS_COLUMNS = (
    "SIG",
    "LIP",
    "LTO",
    "TIP",
    "TOT",
    "mean_DOI",
    "min_DOI",
    "mean_DOO",
    "min_DOO",
    "mean_DCOI",
    "min_DCOI",
    "mean_DCOO",
    "min_DCOO",
    "mean_VTO",
    "max_VTO",
    "mean_ATO",
    "mean_abs_ATO",
    "max_abs_ATO",
    "TCI",
    "TCO",
)


def _number(value: float) -> str:
    return repr(float(value))


def metrics_row(
    signature: str,
    initial: TrajectoryMetrics,
    optimized: TrajectoryMetrics,
    *,
    record_timing: bool = True,
) -> dict[str, str]:
    """One CSV row keyed by column name.

    Without ``record_timing`` the compute-time columns are written as 0.0 so
    repeated runs produce identical files.
    """
    values = [
        initial.length,
        optimized.length,
        initial.duration,
        optimized.duration,
        initial.mean_uav_clearance,
        initial.min_uav_clearance,
        optimized.mean_uav_clearance,
        optimized.min_uav_clearance,
        initial.mean_tether_clearance,
        initial.min_tether_clearance,
        optimized.mean_tether_clearance,
        optimized.min_tether_clearance,
        optimized.mean_speed,
        optimized.max_speed,
        optimized.mean_acceleration,
        optimized.mean_abs_acceleration,
        optimized.max_abs_acceleration,
        initial.compute_time if record_timing else 0.0,
        optimized.compute_time if record_timing else 0.0,
    ]
    return dict(zip(METRICS_COLUMNS, [signature, *(_number(v) for v in values)], strict=True))


def write_metrics_csv(
    path: Path,
    signature: str,
    initial: TrajectoryMetrics,
    optimized: TrajectoryMetrics,
    *,
    record_timing: bool = True,
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=METRICS_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerow(metrics_row(signature, initial, optimized, record_timing=record_timing))
    logger.info("Metrics written", path=str(path), signature=signature)
    return path


def format_comparison(report: ComparisonReport) -> str:
    """Fixed-width table of the comparison rows followed by the flags."""
    lines = [f"{'metric':<24}{'initial':>14}{'optimized':>14}{'delta':>14}{'ratio':>10}"]
    for row in report.rows:
        lines.append(
            f"{row.metric:<24}{row.initial:>14.4f}{row.optimized:>14.4f}{row.delta:>14.4f}{row.ratio:>10.3f}"
        )
    lines.append("")
    lines.append(f"length_inflation={str(report.length_inflation).lower()}")
    lines.append(f"clearance_regression={str(report.clearance_regression).lower()}")
    lines.append(f"tether_clearance_regression={str(report.tether_clearance_regression).lower()}")
    return "\n".join(lines)
