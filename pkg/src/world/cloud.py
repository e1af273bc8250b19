"""Obstacle point cloud with an exact nearest-neighbour index."""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial import cKDTree


class ObstacleCloud:
    """Obstacle points indexed by a KD-tree.

    Queries are exact (``eps=0``); an empty cloud answers every query with
    ``inf`` and no witness point.
    """

    def __init__(self, points: ArrayLike | None = None) -> None:
        """Build the index.

        Args:
            points: (k, 3) obstacle points; ``None`` or empty for an obstacle-free world
        """
        pts = np.zeros((0, 3)) if points is None else np.asarray(points, dtype=np.float64)
        self._points: NDArray[np.float64] = pts.reshape(-1, 3).copy()
        self._points.setflags(write=False)
        self._tree: cKDTree | None = cKDTree(self._points) if len(self._points) else None

    def __len__(self) -> int:
        return len(self._points)

    @property
    def points(self) -> NDArray[np.float64]:
        return self._points

    @property
    def is_empty(self) -> bool:
        return self._tree is None

    def nearest(self, p: ArrayLike) -> tuple[float, NDArray[np.float64] | None]:
        """Distance to the closest obstacle point and that point."""
        if self._tree is None:
            return math.inf, None
        query = np.asarray(p, dtype=np.float64)
        _, index = self._tree.query(query, k=1)
        witness = self._points[int(index)]
        return float(np.linalg.norm(witness - query)), witness

    def distances(self, points: ArrayLike) -> NDArray[np.float64]:
        """Nearest-obstacle distance for each row of an (m, 3) array."""
        pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        if self._tree is None:
            return np.full(len(pts), math.inf)
        dist, _ = self._tree.query(pts, k=1)
        return np.asarray(dist, dtype=np.float64)

    def min_distance(self, points: ArrayLike) -> float:
        """Smallest nearest-obstacle distance over a set of points (``inf`` if none)."""
        dist = self.distances(points)
        return float(dist.min()) if len(dist) else math.inf

    def translated(self, offset: ArrayLike) -> "ObstacleCloud":
        return ObstacleCloud(self._points + np.asarray(offset, dtype=np.float64))
