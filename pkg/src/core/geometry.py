"""Small geometric helpers on points and polylines."""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.types import Point3


def distance(a: Point3, b: Point3) -> float:
    """Euclidean distance between two points.

    Example:
        >>> distance(Point3(x=0, y=0, z=0), Point3(x=3, y=4, z=0))
        5.0
    """
    return math.dist(a.as_tuple(), b.as_tuple())


def segment_lengths(points: ArrayLike) -> NDArray[np.float64]:
    """Lengths of the segments of an (n, 3) polyline."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    if len(pts) < 2:
        return np.zeros(0, dtype=np.float64)
    return np.linalg.norm(np.diff(pts, axis=0), axis=1)


def polyline_length(points: ArrayLike) -> float:
    """Total length of an (n, 3) polyline."""
    return float(segment_lengths(points).sum())


def horizontal_frame(a: NDArray[np.float64], b: NDArray[np.float64]) -> tuple[float, float, NDArray[np.float64]]:
    """Split the displacement a -> b into its vertical-plane components.

    Returns:
        Tuple of (horizontal separation d, signed vertical rise h, horizontal unit
        direction). The direction defaults to +x when a and b are stacked.
    """
    delta = b - a
    d = math.hypot(float(delta[0]), float(delta[1]))
    h = float(delta[2])
    if d > 0.0:
        direction = np.array([delta[0] / d, delta[1] / d, 0.0], dtype=np.float64)
    else:
        direction = np.array([1.0, 0.0, 0.0], dtype=np.float64)
    return d, h, direction
