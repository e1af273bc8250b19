"""Procedural test scenes.

Five synthetic environments covering the situations a tethered UAV meets:
an arch in open space, a narrow corridor, a confined room with a pillar, a
room with an outlet duct, and an open field with scattered structures. The
anchor sits at the origin and every scene keeps the straight anchor-goal
segment at least the tether clearance away from obstacles, so a taut tether
to the goal is feasible.
Each scene puts an obstacle within the obstacle-factor range of the straight
start-goal line, off to one side, so the optimizer has clearance to gain.
The cloud is derived from occupied-cell centers; there is no floor.
"""

from enum import StrEnum

import numpy as np
import structlog
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field

from src.core.types import ORIGIN, Point3
from src.world.grid import OccupancyGrid
from src.world.world import World

logger = structlog.get_logger(__name__)


class SceneKind(StrEnum):
    ARC = "arc"
    CORRIDOR = "corridor"
    CONFINED = "confined"
    DUCT = "duct"
    OPEN = "open"


class SceneParams(BaseModel):
    """Tunable scene dimensions (meters)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    resolution: float = Field(default=0.2, gt=0.0, le=1.0)
    wall_height: float = Field(default=2.6, gt=0.0, description="Corridor wall height")
    corridor_width: float = Field(default=1.6, gt=0.0, description="Free width of corridor and duct channels")
    channel_offset: float = Field(
        default=0.4, description="Lateral shift of the corridor and duct channels off the start-goal line"
    )
    density: float = Field(default=0.05, ge=0.0, le=0.5, description="Footprint fraction covered in the open scene")
    seed: int = Field(default=0, ge=0, description="Seed for random placement in the open scene")


class SceneLayout(BaseModel):
    """A generated world with its suggested start, goal and anchor."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: SceneKind
    world: World
    start: Point3
    goal: Point3
    anchor: Point3 = ORIGIN


class _Canvas:
    """Axis-aligned box painter over a grid whose bounds are multiples of the resolution."""

    def __init__(self, resolution: float, lower: ArrayLike, upper: ArrayLike) -> None:
        self.resolution = resolution
        self.lower = np.asarray(lower, dtype=np.float64)
        dims = np.rint((np.asarray(upper, dtype=np.float64) - self.lower) / resolution).astype(int)
        self.occupancy = np.zeros(tuple(int(n) for n in dims), dtype=bool)

    def _index(self, value: float, axis: int) -> int:
        index = round(float((value - self.lower[axis]) / self.resolution))
        return min(max(index, 0), self.occupancy.shape[axis])

    def fill(self, lo: ArrayLike, hi: ArrayLike, value: bool = True) -> None:
        """Set every cell of the box [lo, hi) to ``value``."""
        lo_arr, hi_arr = np.asarray(lo, dtype=np.float64), np.asarray(hi, dtype=np.float64)
        i0, j0, k0 = (self._index(lo_arr[a], a) for a in range(3))
        i1, j1, k1 = (self._index(hi_arr[a], a) for a in range(3))
        self.occupancy[i0:i1, j0:j1, k0:k1] = value

    def grid(self) -> OccupancyGrid:
        shape = self.occupancy.shape
        return OccupancyGrid(
            resolution=self.resolution,
            origin=Point3.of(self.lower),
            dims=(shape[0], shape[1], shape[2]),
            occupancy=self.occupancy,
        )


def _channel(params: SceneParams) -> tuple[float, float]:
    """Lateral bounds of the corridor and duct channels."""
    half = params.corridor_width / 2.0
    return params.channel_offset - half, params.channel_offset + half


def _arc(params: SceneParams) -> SceneLayout:
    canvas = _Canvas(params.resolution, (-1.0, -3.0, 0.0), (11.0, 3.0, 4.0))
    # Pillars 0.6 m either side of the line, beam 0.5 m above it.
    canvas.fill((4.8, -1.0, 0.0), (5.2, -0.6, 2.4))
    canvas.fill((4.8, 0.6, 0.0), (5.2, 1.0, 2.4))
    canvas.fill((4.8, -1.0, 2.0), (5.2, 1.0, 2.4))
    return SceneLayout(
        kind=SceneKind.ARC,
        world=World.from_grid(canvas.grid()),
        start=Point3(x=0.0, y=0.0, z=1.0),
        goal=Point3(x=10.0, y=0.0, z=2.0),
    )


def _corridor(params: SceneParams) -> SceneLayout:
    low, high = _channel(params)
    canvas = _Canvas(params.resolution, (-1.0, -3.0, 0.0), (14.0, 3.0, 3.0))
    canvas.fill((2.0, -3.0, 0.0), (12.0, low, params.wall_height))
    canvas.fill((2.0, high, 0.0), (12.0, 3.0, params.wall_height))
    return SceneLayout(
        kind=SceneKind.CORRIDOR,
        world=World.from_grid(canvas.grid()),
        start=Point3(x=0.0, y=0.0, z=1.0),
        goal=Point3(x=13.0, y=0.0, z=1.5),
    )


def _confined(params: SceneParams) -> SceneLayout:
    canvas = _Canvas(params.resolution, (-1.0, -3.0, 0.0), (9.0, 3.0, 3.0))
    # Room shell: four walls and a ceiling one cell thick.
    cell = params.resolution
    canvas.fill((-1.0, -3.0, 0.0), (-1.0 + cell, 3.0, 3.0))
    canvas.fill((9.0 - cell, -3.0, 0.0), (9.0, 3.0, 3.0))
    canvas.fill((-1.0, -3.0, 0.0), (9.0, -3.0 + cell, 3.0))
    canvas.fill((-1.0, 3.0 - cell, 0.0), (9.0, 3.0, 3.0))
    canvas.fill((-1.0, -3.0, 3.0 - cell), (9.0, 3.0, 3.0))
    canvas.fill((3.6, 0.6, 0.0), (4.4, 1.4, 3.0))
    return SceneLayout(
        kind=SceneKind.CONFINED,
        world=World.from_grid(canvas.grid()),
        start=Point3(x=0.0, y=0.0, z=1.0),
        goal=Point3(x=7.5, y=0.0, z=1.5),
    )


def _duct(params: SceneParams) -> SceneLayout:
    low, high = _channel(params)
    canvas = _Canvas(params.resolution, (-1.0, -3.0, 0.0), (11.4, 3.0, 3.0))
    # Solid block between the room and the outlet, then carve the tunnel.
    canvas.fill((6.0, -3.0, 0.0), (9.0, 3.0, 3.0))
    canvas.fill((6.0, low, 0.0), (9.0, high, 2.2), value=False)
    return SceneLayout(
        kind=SceneKind.DUCT,
        world=World.from_grid(canvas.grid()),
        start=Point3(x=0.0, y=0.0, z=1.0),
        goal=Point3(x=10.5, y=0.0, z=1.2),
    )


# Obstacles stay out of this half-width around the anchor-goal line.
_OPEN_BAND = 0.8
# Fixed post beside the line, present at any density.
_OPEN_POST = ((6.0, 0.4, 0.0), (6.6, 1.0, 3.0))


def _open(params: SceneParams) -> SceneLayout:
    lower, upper = np.array([-1.0, -4.0, 0.0]), np.array([13.0, 4.0, 4.0])
    canvas = _Canvas(params.resolution, lower, upper)
    canvas.fill(*_OPEN_POST)
    rng = np.random.default_rng(params.seed)

    footprint_area = float((upper[0] - lower[0]) * (upper[1] - lower[1]))
    mean_box_area = 0.7 * 0.7
    target = round(params.density * footprint_area / mean_box_area)
    placed = 0
    for _ in range(20 * target):
        if placed >= target:
            break
        size = rng.uniform(0.4, 1.0, size=2)
        height = rng.uniform(1.0, 3.0)
        corner = rng.uniform(lower[:2], upper[:2] - size)
        if corner[1] < _OPEN_BAND and corner[1] + size[1] > -_OPEN_BAND:
            continue
        canvas.fill((corner[0], corner[1], 0.0), (corner[0] + size[0], corner[1] + size[1], height))
        placed += 1

    return SceneLayout(
        kind=SceneKind.OPEN,
        world=World.from_grid(canvas.grid()),
        start=Point3(x=0.0, y=0.0, z=1.0),
        goal=Point3(x=12.0, y=0.0, z=1.5),
    )


_BUILDERS = {
    SceneKind.ARC: _arc,
    SceneKind.CORRIDOR: _corridor,
    SceneKind.CONFINED: _confined,
    SceneKind.DUCT: _duct,
    SceneKind.OPEN: _open,
}


def generate_scene(kind: SceneKind | str, params: SceneParams | None = None) -> SceneLayout:
    """Build one of the synthetic scenes.

    Args:
        kind: Scene family
        params: Dimensions and seed; defaults when omitted

    Returns:
        The world plus suggested start, goal and anchor
    """
    scene_kind = SceneKind(kind)
    layout = _BUILDERS[scene_kind](params or SceneParams())
    logger.info(
        "Scene generated",
        kind=scene_kind.value,
        dims=layout.world.grid.dims,
        occupied=layout.world.grid.n_occupied,
        points=len(layout.world.cloud),
    )
    return layout
