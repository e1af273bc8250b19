"""Test data factories for trajectories and worlds.

Coordinates are chosen as binary fractions where a test relies on exact
arithmetic (zero residuals, bit-identical anchors).
"""

import math

import numpy as np
from numpy.typing import NDArray

from src.core.types import ORIGIN, Point3, Trajectory, TrajectoryKind
from src.world.cloud import ObstacleCloud
from src.world.grid import OccupancyGrid
from src.world.world import World


def create_straight_trajectory(
    n: int = 9,
    spacing: float = 0.5,
    speed: float = 2.0,
    start: tuple[float, float, float] = (1.0, 0.0, 1.0),
    anchor: Point3 = ORIGIN,
) -> Trajectory:
    """Create a straight, equally spaced, constant-speed trajectory along +x with a taut tether.

    Args:
        n: Number of states
        spacing: Distance between states (m)
        speed: Constant speed (m/s)
        start: First position
        anchor: Tether anchor

    Returns:
        Trajectory: Initial trajectory
    """
    positions = np.array([[start[0] + i * spacing, start[1], start[2]] for i in range(n)], dtype=np.float64)
    lengths = np.linalg.norm(positions - anchor.as_array(), axis=1)
    dts = np.full(n, spacing / speed)
    dts[0] = 0.0
    return Trajectory.from_arrays(positions, lengths, dts, anchor=anchor, kind=TrajectoryKind.INITIAL)


def create_zigzag_trajectory(
    n: int = 9,
    spacing: float = 0.5,
    half_angle: float = math.pi / 6.0,
    z: float = 1.5,
    speed: float = 2.0,
) -> Trajectory:
    """Create a trajectory whose segments alternate +-``half_angle`` about +x.

    Consecutive segments turn by ``2 * half_angle``; with an odd ``n`` the
    first and last states lie on the x axis.
    """
    offset = spacing * math.tan(half_angle)
    positions = np.array([[1.0 + i * spacing, offset * (i % 2), z] for i in range(n)], dtype=np.float64)
    lengths = np.linalg.norm(positions, axis=1)
    steps = np.linalg.norm(np.diff(positions, axis=0), axis=1) / speed
    return Trajectory.from_arrays(positions, lengths, np.concatenate([[0.0], steps]))


def create_empty_grid(
    resolution: float = 0.5,
    lower: tuple[float, float, float] = (-5.0, -5.0, -1.0),
    dims: tuple[int, int, int] = (30, 20, 12),
) -> OccupancyGrid:
    return OccupancyGrid.empty(resolution, Point3.of(lower), dims)


def create_box_world(
    resolution: float,
    lower: tuple[float, float, float],
    dims: tuple[int, int, int],
    boxes: list[tuple[tuple[int, int, int], tuple[int, int, int]]],
) -> World:
    """Create a world from index-space boxes ``(lo, hi)`` (``hi`` exclusive).

    The cloud holds the centres of the occupied cells.
    """
    occupancy = np.zeros(dims, dtype=bool)
    for lo, hi in boxes:
        occupancy[lo[0] : hi[0], lo[1] : hi[1], lo[2] : hi[2]] = True
    grid = OccupancyGrid(resolution=resolution, origin=Point3.of(lower), dims=dims, occupancy=occupancy)
    return World.from_grid(grid)


def create_plane_points(
    x: float, y_range: tuple[float, float], z_range: tuple[float, float], step: float = 0.1
) -> NDArray[np.float64]:
    """Dense points on the plane ``x = const`` over a y-z rectangle."""
    ys = np.arange(y_range[0], y_range[1] + step / 2.0, step)
    zs = np.arange(z_range[0], z_range[1] + step / 2.0, step)
    yy, zz = np.meshgrid(ys, zs, indexing="ij")
    return np.column_stack([np.full(yy.size, x), yy.ravel(), zz.ravel()])


def create_barrier_scene() -> tuple[World, Point3, Point3]:
    """Create a wall with a single window whose approach is blocked for the tether.

    The wall (grid only) spans x in [2.0, 2.2) with a window at y in
    [1.4, 2.6). The cloud holds only a curtain at x = 1.5, y in [1, 3] that
    every tether to the window crosses, however slack. The UAV alone can fly
    through the window; a tethered UAV cannot.

    Returns:
        World, start and goal
    """
    dims = (26, 30, 12)
    occupancy = np.zeros(dims, dtype=bool)
    occupancy[13, :, :] = True
    occupancy[13, 22:28, :] = False
    grid = OccupancyGrid(resolution=0.2, origin=Point3(x=-0.6, y=-3.0, z=0.0), dims=dims, occupancy=occupancy)
    curtain = ObstacleCloud(create_plane_points(1.5, (1.0, 3.0), (-3.0, 2.4)))
    return World(grid, curtain), Point3(x=0.0, y=0.0, z=0.5), Point3(x=4.0, y=0.0, z=0.5)
