"""The planning environment: occupancy grid plus obstacle cloud."""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.types import Point3
from src.world.cloud import ObstacleCloud
from src.world.grid import OccupancyGrid


class World:
    """Both obstacle representations of one environment.

    The grid drives search and line of sight; the cloud answers clearance
    queries. The two may be authored independently.
    """

    def __init__(self, grid: OccupancyGrid, cloud: ObstacleCloud | None = None) -> None:
        self._grid = grid
        self._cloud = cloud if cloud is not None else ObstacleCloud()

    @property
    def grid(self) -> OccupancyGrid:
        return self._grid

    @property
    def cloud(self) -> ObstacleCloud:
        return self._cloud

    @classmethod
    def from_grid(cls, grid: OccupancyGrid) -> "World":
        """A world whose cloud is the centers of the grid's occupied cells."""
        return cls(grid, ObstacleCloud(grid.occupied_centers()))

    def nearest_obstacle(self, p: Point3 | ArrayLike) -> tuple[float, NDArray[np.float64] | None]:
        """Exact distance to the closest obstacle point and that point (``inf``, ``None`` if empty)."""
        query = p.as_array() if isinstance(p, Point3) else p
        return self._cloud.nearest(query)

    def translated(self, offset: ArrayLike) -> "World":
        """The same world shifted rigidly by ``offset``."""
        shift = np.asarray(offset, dtype=np.float64)
        grid = self._grid.model_copy(update={"origin": Point3.of(self._grid.origin.as_array() + shift)})
        return World(grid, self._cloud.translated(shift))
