"""Turn planner way-points into the optimizer's initial trajectory.

Each segment is split into equal pieces no longer than ``interp_spacing``;
every state gets its minimal feasible tether length and a time increment from
a constant-velocity model.
"""

import math

import numpy as np
import structlog
from numpy.typing import NDArray

from src.core.types import ORIGIN, Point3, Trajectory, TrajectoryKind
from src.planner.config import PlannerConfig
from src.planner.feasibility import check_catenary_feasibility
from src.shared.exceptions import InfeasibleInterpolantError
from src.world.world import World

logger = structlog.get_logger(__name__)


def _subdivide(a: NDArray[np.float64], b: NDArray[np.float64], spacing: float) -> NDArray[np.float64]:
    """Points after ``a`` up to and including ``b``, evenly spaced at most ``spacing`` apart."""
    pieces = max(1, math.ceil(float(np.linalg.norm(b - a)) / spacing - 1e-9))
    fractions = np.arange(1, pieces + 1, dtype=np.float64) / pieces
    points = a + fractions[:, None] * (b - a)
    points[-1] = b
    return points


def _segment_lengths(
    points: NDArray[np.float64], anchor: NDArray[np.float64], cfg: PlannerConfig, w: World
) -> tuple[list[float], int | None]:
    """Tether length per point, or the index of the first infeasible point."""
    lengths = []
    for index, p in enumerate(points):
        feasible, length = check_catenary_feasibility(p, anchor, cfg, w)
        if not feasible or w.grid.cell_occupied(p):
            return lengths, index
        lengths.append(length)
    return lengths, None


def interpolate_path(
    waypoints: list[Point3],
    cfg: PlannerConfig,
    w: World,
    anchor: Point3 = ORIGIN,
) -> Trajectory:
    """Interpolate way-points into a timed, tether-annotated trajectory.

    A segment with an infeasible interpolant is retried once at half spacing.

    Raises:
        InfeasibleInterpolantError: If a state still fails the tether or cell check
    """
    if len(waypoints) < 2:
        raise InfeasibleInterpolantError(f"need at least 2 way-points, got {len(waypoints)}")
    base = anchor.as_array()
    first = waypoints[0].as_array()

    feasible, first_length = check_catenary_feasibility(first, base, cfg, w)
    if not feasible or w.grid.cell_occupied(first):
        raise InfeasibleInterpolantError(
            "start state has no feasible tether", segment=0, position=list(waypoints[0].as_tuple())
        )

    positions = [first]
    lengths = [first_length]
    for segment, (a, b) in enumerate(zip(waypoints[:-1], waypoints[1:], strict=True)):
        start, end = a.as_array(), b.as_array()
        points = _subdivide(start, end, cfg.interp_spacing)
        seg_lengths, bad = _segment_lengths(points, base, cfg, w)
        if bad is not None:
            logger.info("Retrying segment at half spacing", segment=segment, position=points[bad].tolist())
            points = _subdivide(start, end, cfg.interp_spacing / 2.0)
            seg_lengths, bad = _segment_lengths(points, base, cfg, w)
            if bad is not None:
                raise InfeasibleInterpolantError(
                    f"interpolated state on segment {segment} has no feasible tether",
                    segment=segment,
                    position=points[bad].tolist(),
                )
        positions.extend(points)
        lengths.extend(seg_lengths)

    pos = np.array(positions)
    steps = np.linalg.norm(np.diff(pos, axis=0), axis=1) / cfg.v_init
    dts = np.concatenate([[0.0], steps])
    trajectory = Trajectory.from_arrays(pos, lengths, dts, anchor=anchor, kind=TrajectoryKind.INITIAL)
    logger.info(
        "Path interpolated",
        waypoints=len(waypoints),
        states=len(trajectory),
        length=round(trajectory.path_length(), 4),
    )
    return trajectory
