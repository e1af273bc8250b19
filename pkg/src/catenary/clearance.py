"""Tether clearance against the obstacle cloud."""

import numpy as np
from numpy.typing import NDArray

from src.catenary.models import TetherPolyline
from src.world.world import World


def min_tether_clearance(tether: TetherPolyline | NDArray[np.float64], world: World) -> float:
    """Minimum nearest-obstacle distance over the tether points.

    Returns ``inf`` when the world has no obstacle points.
    """
    points = tether.points if isinstance(tether, TetherPolyline) else tether
    return world.cloud.min_distance(points)
