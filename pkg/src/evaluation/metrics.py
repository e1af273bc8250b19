"""Evaluation metrics of a trajectory and initial-vs-optimized comparison."""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.catenary.clearance import min_tether_clearance
from src.catenary.solver import sample_tether
from src.core.types import Trajectory
from src.optimizer.config import OptConfig
from src.optimizer.factors import residual_acceleration
from src.shared.exceptions import ValidationError
from src.world.world import World

LENGTH_INFLATION_LIMIT = 1.10
_CLEARANCE_SLACK = 1e-9


class TrajectoryMetrics(BaseModel):
    """Length, timing, clearance and dynamics figures of one trajectory.

    Clearances are ``inf`` in a world without obstacle points.
    """

    model_config = ConfigDict(frozen=True)

    length: float = Field(..., ge=0.0, description="Sum of segment lengths (m)")
    duration: float = Field(..., ge=0.0, description="Sum of time increments (s)")
    mean_uav_clearance: float = Field(..., description="Mean UAV-to-obstacle distance over states (m)")
    min_uav_clearance: float = Field(..., description="Minimum UAV-to-obstacle distance (m)")
    mean_tether_clearance: float = Field(..., description="Mean per-state tether clearance (m)")
    min_tether_clearance: float = Field(..., description="Minimum tether clearance over all states (m)")
    mean_speed: float = Field(..., ge=0.0, description="Mean segment speed (m/s)")
    max_speed: float = Field(..., ge=0.0)
    mean_acceleration: float = Field(..., description="Signed mean acceleration (m/s^2)")
    mean_abs_acceleration: float = Field(..., ge=0.0)
    max_abs_acceleration: float = Field(..., ge=0.0)
    compute_time: float = Field(default=0.0, ge=0.0, description="Wall time to produce the trajectory (s)")

    @model_validator(mode="after")
    def _check_clearance_order(self) -> "TrajectoryMetrics":
        for low, mean in (
            (self.min_uav_clearance, self.mean_uav_clearance),
            (self.min_tether_clearance, self.mean_tether_clearance),
        ):
            if low > mean + _CLEARANCE_SLACK * max(1.0, abs(mean)):
                raise ValidationError(f"minimum clearance {low} exceeds mean {mean}")
        return self


def tether_clearances(t: Trajectory, w: World, cfg: OptConfig) -> np.ndarray:
    """Tether clearance of every state, the tether drawn at ``max(l, chord)``."""
    if w.cloud.is_empty:
        return np.full(len(t), math.inf)
    anchor = t.anchor.as_array()
    out = np.empty(len(t), dtype=np.float64)
    for i, (p, length) in enumerate(zip(t.positions(), t.tether_lengths(), strict=True)):
        chord = float(np.linalg.norm(p - anchor))
        out[i] = min_tether_clearance(sample_tether(anchor, p, max(float(length), chord), cfg.m), w)
    return out


def compute_metrics(t: Trajectory, w: World, cfg: OptConfig, compute_time: float = 0.0) -> TrajectoryMetrics:
    """Evaluate ``t`` against ``w``.

    Speeds are ``|p[i+1] - p[i]| / dt[i+1]``; accelerations use the same
    discrete formula as the optimizer's acceleration residual. Clearances are
    averaged over states.
    """
    pos = t.positions()
    dts = t.dts()
    segments = np.linalg.norm(np.diff(pos, axis=0), axis=1)
    speeds = segments / dts[1:]
    accelerations = np.array(
        [residual_acceleration(pos[i - 1], pos[i], pos[i + 1], dts[i], dts[i + 1]) for i in range(1, len(t) - 1)],
        dtype=np.float64,
    )
    uav = w.cloud.distances(pos)
    tether = tether_clearances(t, w, cfg)
    has_acc = accelerations.size > 0

    return TrajectoryMetrics(
        length=float(segments.sum()),
        duration=float(dts.sum()),
        mean_uav_clearance=float(uav.mean()),
        min_uav_clearance=float(uav.min()),
        mean_tether_clearance=float(tether.mean()),
        min_tether_clearance=float(tether.min()),
        mean_speed=float(speeds.mean()),
        max_speed=float(speeds.max()),
        mean_acceleration=float(accelerations.mean()) if has_acc else 0.0,
        mean_abs_acceleration=float(np.abs(accelerations).mean()) if has_acc else 0.0,
        max_abs_acceleration=float(np.abs(accelerations).max()) if has_acc else 0.0,
        compute_time=compute_time,
    )


# ============================================================================
# Comparison
# ============================================================================


class ComparisonRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    metric: str
    initial: float
    optimized: float
    delta: float
    ratio: float


class ComparisonReport(BaseModel):
    """Per-metric deltas and ratios plus regression flags."""

    model_config = ConfigDict(frozen=True)

    rows: tuple[ComparisonRow, ...]
    length_inflation: bool = Field(..., description="Optimized length exceeds initial by more than 10%")
    clearance_regression: bool = Field(..., description="Optimized minimum UAV clearance below initial")
    tether_clearance_regression: bool = Field(..., description="Optimized minimum tether clearance below initial")

    def row(self, metric: str) -> ComparisonRow:
        for row in self.rows:
            if row.metric == metric:
                return row
        raise KeyError(metric)


def _delta_ratio(initial: float, optimized: float) -> tuple[float, float]:
    if initial == optimized:
        return 0.0, 1.0
    delta = optimized - initial
    if initial == 0.0:
        return delta, math.copysign(math.inf, optimized)
    return delta, optimized / initial


def compare(initial: TrajectoryMetrics, optimized: TrajectoryMetrics) -> ComparisonReport:
    """Compare the metrics of the same scenario before and after optimization."""
    rows = []
    for name in TrajectoryMetrics.model_fields:
        a, b = getattr(initial, name), getattr(optimized, name)
        delta, ratio = _delta_ratio(a, b)
        rows.append(ComparisonRow(metric=name, initial=a, optimized=b, delta=delta, ratio=ratio))

    inflation = initial.length > 0.0 and optimized.length / initial.length > LENGTH_INFLATION_LIMIT
    return ComparisonReport(
        rows=tuple(rows),
        length_inflation=inflation,
        clearance_regression=optimized.min_uav_clearance < initial.min_uav_clearance,
        tether_clearance_regression=optimized.min_tether_clearance < initial.min_tether_clearance,
    )
