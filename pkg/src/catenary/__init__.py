"""Catenary tether model: solve, discretize and clearance-check the cable."""

from src.catenary.clearance import min_tether_clearance
from src.catenary.models import Catenary, CatenaryKind, TetherPolyline
from src.catenary.solver import (
    discretize,
    sample_tether,
    solve_catenary,
    tether_polyline,
    vertical_degenerate,
)

__all__ = [
    "Catenary",
    "CatenaryKind",
    "TetherPolyline",
    "discretize",
    "min_tether_clearance",
    "sample_tether",
    "solve_catenary",
    "tether_polyline",
    "vertical_degenerate",
]
