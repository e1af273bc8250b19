"""3D occupancy grid with exact voxel-walk line of sight.

Cell ``(i, j, k)`` covers ``[origin + index * resolution, origin + (index + 1) * resolution)``
on each axis. The occupancy array is indexed ``[i, j, k]`` and flattened in C
order on disk.
"""

import itertools
import math
from collections.abc import Iterator

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.types import Point3
from src.shared.exceptions import DimensionMismatchError

Cell = tuple[int, int, int]

# Crossing parameters closer than this (segment fraction) count as one corner.
_TIE_TOLERANCE = 1e-9


class OccupancyGrid(BaseModel):
    """Boolean occupancy over a regular 3D lattice."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    resolution: float = Field(..., gt=0.0, allow_inf_nan=False, description="Cell edge length (m)")
    origin: Point3 = Field(..., description="World position of the grid's minimum corner")
    dims: tuple[int, int, int] = Field(..., description="Cell counts along x, y, z")
    occupancy: NDArray[np.bool_]
    outside_is_obstacle: bool = True

    @model_validator(mode="after")
    def _check_shape(self) -> "OccupancyGrid":
        if any(n < 1 for n in self.dims):
            raise DimensionMismatchError(f"grid dims must all be >= 1, got {self.dims}")
        if self.occupancy.shape != self.dims:
            raise DimensionMismatchError(
                f"occupancy shape {self.occupancy.shape} does not match dims {self.dims}"
            )
        return self

    @classmethod
    def empty(
        cls,
        resolution: float,
        origin: Point3,
        dims: tuple[int, int, int],
        *,
        outside_is_obstacle: bool = True,
    ) -> "OccupancyGrid":
        """A grid with every cell free."""
        return cls(
            resolution=resolution,
            origin=origin,
            dims=dims,
            occupancy=np.zeros(dims, dtype=bool),
            outside_is_obstacle=outside_is_obstacle,
        )

    @property
    def n_cells(self) -> int:
        return int(np.prod(self.dims))

    @property
    def n_occupied(self) -> int:
        return int(self.occupancy.sum())

    def upper_corner(self) -> NDArray[np.float64]:
        return self.origin.as_array() + self.resolution * np.asarray(self.dims, dtype=np.float64)

    # ------------------------------------------------------------------
    # Coordinates
    # ------------------------------------------------------------------

    def to_grid_units(self, p: ArrayLike) -> NDArray[np.float64]:
        """Continuous cell coordinates of a world point."""
        return (np.asarray(p, dtype=np.float64) - self.origin.as_array()) / self.resolution

    def world_to_cell(self, p: ArrayLike) -> Cell:
        g = self.to_grid_units(p)
        return (math.floor(g[0]), math.floor(g[1]), math.floor(g[2]))

    def cell_center(self, cell: Cell) -> NDArray[np.float64]:
        return self.origin.as_array() + (np.asarray(cell, dtype=np.float64) + 0.5) * self.resolution

    def in_bounds(self, cell: Cell) -> bool:
        return all(0 <= c < n for c, n in zip(cell, self.dims, strict=True))

    def is_occupied_cell(self, cell: Cell) -> bool:
        """Occupancy of a cell; cells outside the grid follow ``outside_is_obstacle``."""
        if not self.in_bounds(cell):
            return self.outside_is_obstacle
        return bool(self.occupancy[cell])

    def cell_occupied(self, p: ArrayLike) -> bool:
        """Whether the world point ``p`` falls in an occupied cell."""
        return self.is_occupied_cell(self.world_to_cell(p))

    def occupied_centers(self) -> NDArray[np.float64]:
        """Centers of all occupied cells as a (k, 3) array, in C order."""
        cells = np.argwhere(self.occupancy)
        return self.origin.as_array() + (cells.astype(np.float64) + 0.5) * self.resolution

    # ------------------------------------------------------------------
    # Line of sight
    # ------------------------------------------------------------------

    def traverse(self, a: ArrayLike, b: ArrayLike) -> Iterator[Cell]:
        """Yield every cell the segment a-b passes through, from a's cell to b's.

        Amanatides-Woo traversal in grid units. When the segment crosses an
        edge or a corner exactly, every cell sharing that edge or corner is
        yielded before the diagonal step, so the walk is conservative and the
        set of cells does not depend on the direction of travel.
        """
        ga, gb = self.to_grid_units(a), self.to_grid_units(b)
        cell = [math.floor(ga[0]), math.floor(ga[1]), math.floor(ga[2])]
        end = (math.floor(gb[0]), math.floor(gb[1]), math.floor(gb[2]))
        yield (cell[0], cell[1], cell[2])

        delta = gb - ga
        step = [0, 0, 0]
        remaining = [abs(end[axis] - cell[axis]) for axis in range(3)]
        for axis in range(3):
            if remaining[axis]:
                step[axis] = 1 if end[axis] > cell[axis] else -1

        def crossing(axis: int) -> float:
            boundary = cell[axis] + 1 if step[axis] > 0 else cell[axis]
            return float((boundary - ga[axis]) / delta[axis])

        t_max = [crossing(axis) if remaining[axis] else math.inf for axis in range(3)]
        while any(remaining):
            t_next = min(t_max)
            tied = [axis for axis in range(3) if remaining[axis] and t_max[axis] - t_next <= _TIE_TOLERANCE]
            for size in range(1, len(tied)):
                for axes in itertools.combinations(tied, size):
                    corner = list(cell)
                    for ax in axes:
                        corner[ax] += step[ax]
                    yield (corner[0], corner[1], corner[2])
            for axis in tied:
                cell[axis] += step[axis]
                remaining[axis] -= 1
                t_max[axis] = crossing(axis) if remaining[axis] else math.inf
            yield (cell[0], cell[1], cell[2])

    def line_of_sight(self, a: ArrayLike, b: ArrayLike) -> bool:
        """True iff no cell traversed by segment a-b is occupied."""
        return not any(self.is_occupied_cell(cell) for cell in self.traverse(a, b))
