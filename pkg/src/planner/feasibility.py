"""Tether feasibility check for a single UAV position.

Starting from the taut chord, the tether length grows by ``eps_l`` until the
discretized catenary keeps ``tether_clearance_min`` from every obstacle point
or the length reaches ``l_max``.
"""

import numpy as np
from numpy.typing import NDArray

from src.catenary.clearance import min_tether_clearance
from src.catenary.solver import sample_tether
from src.core.types import Point3
from src.planner.config import PlannerConfig
from src.shared.metrics import record_feasibility_check
from src.world.grid import Cell
from src.world.world import World


def check_catenary_feasibility(
    p: Point3 | NDArray[np.float64],
    anchor: Point3 | NDArray[np.float64],
    cfg: PlannerConfig,
    w: World,
) -> tuple[bool, float]:
    """Find the shortest collision-free tether length for a UAV at ``p``.

    Returns:
        ``(feasible, length)``; ``length`` is the first clear length when
        feasible, otherwise the first length at or beyond ``l_max``
    """
    uav = p.as_array() if isinstance(p, Point3) else np.asarray(p, dtype=np.float64)
    base = anchor.as_array() if isinstance(anchor, Point3) else np.asarray(anchor, dtype=np.float64)
    length = float(np.linalg.norm(uav - base))

    def in_collision(candidate: float) -> bool:
        tether = sample_tether(base, uav, candidate, cfg.m)
        return min_tether_clearance(tether, w) < cfg.tether_clearance_min

    while length < cfg.l_max and in_collision(length):
        length += cfg.eps_l
    return length < cfg.l_max, length


class FeasibilityCache:
    """Per-cell memo of the feasibility check, evaluated at cell centers."""

    def __init__(self, world: World, anchor: Point3, cfg: PlannerConfig) -> None:
        self._world = world
        self._anchor = anchor.as_array()
        self._cfg = cfg
        self._results: dict[Cell, tuple[bool, float]] = {}

    def __len__(self) -> int:
        return len(self._results)

    def check(self, cell: Cell) -> tuple[bool, float]:
        cached = self._results.get(cell)
        record_feasibility_check(cache_hit=cached is not None)
        if cached is not None:
            return cached
        center = self._world.grid.cell_center(cell)
        result = check_catenary_feasibility(center, self._anchor, self._cfg, self._world)
        self._results[cell] = result
        return result

    def is_feasible(self, cell: Cell) -> bool:
        return self.check(cell)[0]

