"""Tether-aware Lazy Theta* over the occupancy grid.

Any-angle A* variant: a newly reached cell optimistically inherits the parent
of the cell it was reached from, and the line-of-sight check to that parent is
deferred until the cell is expanded. When the check fails, the cell is
re-parented to its best closed neighbour.

A cell is a valid node when it is inside the grid, free, and (in the
tether-aware mode) its center passes the catenary feasibility check.
"""

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict

from src.core.geometry import polyline_length
from src.core.types import ORIGIN, Point3
from src.planner.config import PlannerConfig
from src.planner.feasibility import FeasibilityCache
from src.shared.exceptions import GoalInfeasibleError, NoPathError, StartInfeasibleError
from src.shared.metrics import record_planner_run, track_duration
from src.world.grid import Cell
from src.world.world import World

logger = structlog.get_logger(__name__)

_OFFSETS: tuple[Cell, ...] = tuple(
    (di, dj, dk)
    for di in (-1, 0, 1)
    for dj in (-1, 0, 1)
    for dk in (-1, 0, 1)
    if (di, dj, dk) != (0, 0, 0)
)


def _corner_offsets(offset: Cell) -> tuple[Cell, ...]:
    """Axis-aligned sub-moves of a diagonal move (the cells it cuts past)."""
    axes = [axis for axis in range(3) if offset[axis] != 0]
    subsets = []
    for size in range(1, len(axes)):
        for chosen in itertools.combinations(axes, size):
            subsets.append(tuple(offset[a] if a in chosen else 0 for a in range(3)))
    return tuple(subsets)  # type: ignore[arg-type]


_CORNERS: dict[Cell, tuple[Cell, ...]] = {offset: _corner_offsets(offset) for offset in _OFFSETS}


@dataclass(slots=True)
class PathNode:
    """Search state of one cell."""

    cell: Cell
    g: float
    parent: Cell


class PlanResult(BaseModel):
    """Outcome of a successful search."""

    model_config = ConfigDict(frozen=True)

    waypoints: tuple[Point3, ...]
    cells: tuple[Cell, ...]
    length: float
    expansions: int


def _add(cell: Cell, offset: Cell) -> Cell:
    return (cell[0] + offset[0], cell[1] + offset[1], cell[2] + offset[2])


class LazyThetaStar:
    """Lazy Theta* search bound to one world, anchor and configuration."""

    def __init__(
        self,
        world: World,
        cfg: PlannerConfig,
        anchor: Point3 = ORIGIN,
        *,
        tether_aware: bool = True,
    ) -> None:
        self.world = world
        self.cfg = cfg
        self.anchor = anchor
        self.tether_aware = tether_aware
        self.feasibility = FeasibilityCache(world, anchor, cfg)
        self._centers: dict[Cell, NDArray[np.float64]] = {}

    # ------------------------------------------------------------------
    # Node predicate and geometry
    # ------------------------------------------------------------------

    def is_valid(self, cell: Cell) -> bool:
        grid = self.world.grid
        if not grid.in_bounds(cell) or grid.is_occupied_cell(cell):
            return False
        return not self.tether_aware or self.feasibility.is_feasible(cell)

    def _center(self, cell: Cell) -> NDArray[np.float64]:
        center = self._centers.get(cell)
        if center is None:
            center = self.world.grid.cell_center(cell)
            self._centers[cell] = center
        return center

    def _cost(self, a: Cell, b: Cell) -> float:
        ca, cb = self._center(a), self._center(b)
        return math.dist((ca[0], ca[1], ca[2]), (cb[0], cb[1], cb[2]))

    def _visible_neighbors(self, cell: Cell) -> list[Cell]:
        """Valid neighbours reachable without cutting past an occupied cell."""
        grid = self.world.grid
        out = []
        for offset in _OFFSETS:
            nb = _add(cell, offset)
            if any(grid.is_occupied_cell(_add(cell, c)) for c in _CORNERS[offset]):
                continue
            if self.is_valid(nb):
                out.append(nb)
        return out

    # ------------------------------------------------------------------
    # Search
    # ------------------------------------------------------------------

    def _set_vertex(self, node: PathNode, nodes: dict[Cell, PathNode], closed: set[Cell]) -> None:
        if node.parent == node.cell:
            return
        if self.world.grid.line_of_sight(self._center(node.parent), self._center(node.cell)):
            return
        best_g, best_parent = math.inf, node.parent
        for nb in self._visible_neighbors(node.cell):
            if nb not in closed:
                continue
            candidate = nodes[nb].g + self._cost(nb, node.cell)
            if candidate < best_g:
                best_g, best_parent = candidate, nb
        node.g, node.parent = best_g, best_parent

    def search(self, start: Point3, goal: Point3) -> PlanResult:
        """Plan from ``start`` to ``goal``.

        Raises:
            StartInfeasibleError: Start cell occupied, outside the grid or tether-infeasible
            GoalInfeasibleError: Same for the goal cell
            NoPathError: Open set exhausted or expansion cap reached
        """
        grid = self.world.grid
        start_cell = grid.world_to_cell(start.as_array())
        goal_cell = grid.world_to_cell(goal.as_array())
        if not self.is_valid(start_cell):
            raise StartInfeasibleError(
                f"start {start.as_tuple()} is not a feasible cell", details={"cell": start_cell}
            )
        if not self.is_valid(goal_cell):
            raise GoalInfeasibleError(f"goal {goal.as_tuple()} is not a feasible cell", details={"cell": goal_cell})

        goal_center = self._center(goal_cell)

        def heuristic(cell: Cell) -> float:
            c = self._center(cell)
            return math.dist((c[0], c[1], c[2]), (goal_center[0], goal_center[1], goal_center[2]))

        nodes = {start_cell: PathNode(start_cell, 0.0, start_cell)}
        counter = itertools.count()
        open_heap: list[tuple[float, float, int, Cell]] = [(heuristic(start_cell), -0.0, next(counter), start_cell)]
        closed: set[Cell] = set()
        expansions = 0

        logger.debug("Search started", start=start_cell, goal=goal_cell, tether_aware=self.tether_aware)
        while open_heap:
            _, neg_g, _, cell = heapq.heappop(open_heap)
            node = nodes[cell]
            if cell in closed or -neg_g != node.g:
                continue
            if expansions >= self.cfg.max_expansions:
                break
            expansions += 1

            self._set_vertex(node, nodes, closed)
            if cell == goal_cell:
                record_planner_run(expansions, success=True)
                return self._finish(start, goal, node, nodes, expansions)
            closed.add(cell)

            parent = nodes[node.parent]
            for nb in self._visible_neighbors(cell):
                if nb in closed:
                    continue
                nb_node = nodes.get(nb)
                if nb_node is None:
                    nb_node = PathNode(nb, math.inf, nb)
                    nodes[nb] = nb_node
                candidate = parent.g + self._cost(parent.cell, nb)
                if candidate < nb_node.g:
                    nb_node.g, nb_node.parent = candidate, parent.cell
                    heapq.heappush(open_heap, (candidate + heuristic(nb), -candidate, next(counter), nb))

        record_planner_run(expansions, success=False)
        logger.warning("No path found", expansions=expansions, feasibility_cells=len(self.feasibility))
        raise NoPathError(
            f"no path from {start.as_tuple()} to {goal.as_tuple()} after {expansions} expansions",
            expansions=expansions,
        )

    def _finish(
        self,
        start: Point3,
        goal: Point3,
        goal_node: PathNode,
        nodes: dict[Cell, PathNode],
        expansions: int,
    ) -> PlanResult:
        cells = [goal_node.cell]
        node = goal_node
        while node.parent != node.cell:
            node = nodes[node.parent]
            cells.append(node.cell)
        cells.reverse()

        waypoints = self._snap_endpoints(start, goal, [self._center(c) for c in cells])
        length = polyline_length(np.array([p.as_tuple() for p in waypoints]))
        logger.info(
            "Path found",
            waypoints=len(waypoints),
            length=round(length, 4),
            expansions=expansions,
            feasibility_cells=len(self.feasibility),
        )
        return PlanResult(waypoints=tuple(waypoints), cells=tuple(cells), length=length, expansions=expansions)

    def _snap_endpoints(self, start: Point3, goal: Point3, centers: list[NDArray[np.float64]]) -> list[Point3]:
        """Replace the end cell centers by the exact endpoints where line of sight allows."""
        grid = self.world.grid
        first, last = start.as_array(), goal.as_array()
        inner = centers[1:-1]
        points = [first]
        if not grid.line_of_sight(first, inner[0] if inner else last):
            points.append(centers[0])
        points.extend(inner)
        if not grid.line_of_sight(points[-1], last):
            points.append(centers[-1])
        points.append(last)

        deduped = [points[0]]
        for p in points[1:]:
            if np.linalg.norm(p - deduped[-1]) > 1e-12:
                deduped.append(p)
        if len(deduped) == 1:
            deduped.append(last)
        return [Point3.of(p) for p in deduped]


@track_duration("plan_duration_seconds")
def plan_path(
    start: Point3,
    goal: Point3,
    cfg: PlannerConfig,
    w: World,
    anchor: Point3 = ORIGIN,
    *,
    tether_aware: bool = True,
) -> list[Point3]:
    """Plan way-points from ``start`` to ``goal``.

    With ``tether_aware=False`` the node predicate ignores the tether and only
    requires free cells.
    """
    planner = LazyThetaStar(w, cfg, anchor, tether_aware=tether_aware)
    return list(planner.search(start, goal).waypoints)
