"""Per-iteration convergence trace as CSV."""

import csv
from pathlib import Path

import structlog

from src.optimizer.factors import FactorKind
from src.optimizer.levenberg_marquardt import SolveReport

logger = structlog.get_logger(__name__)

TRACE_COLUMNS = (
    "iteration",
    "cost",
    "damping",
    "step_norm",
    "accepted",
    "predicted_reduction",
    "actual_reduction",
    "gain_ratio",
)


def _number(value: float) -> str:
    return repr(float(value))


def write_trace(report: SolveReport, path: Path) -> Path:
    """Write one row per attempted step, plus a row 0 with the initial cost."""
    kinds = [kind.value for kind in FactorKind]
    header = [*TRACE_COLUMNS, *(f"cost_{kind}" for kind in kinds)]
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerow(
            [0, _number(report.initial_cost), "", "", "", "", "", ""]
            + [_number(report.initial_breakdown.get(kind, 0.0)) for kind in kinds]
        )
        for record in report.records:
            writer.writerow(
                [
                    record.iteration,
                    _number(record.cost),
                    _number(record.damping),
                    _number(record.step_norm),
                    int(record.accepted),
                    _number(record.predicted_reduction),
                    _number(record.actual_reduction),
                    _number(record.gain_ratio),
                ]
                + [_number(record.breakdown.get(kind, 0.0)) for kind in kinds]
            )
    logger.info("Trace written", path=str(path), rows=len(report.records) + 1)
    return path
