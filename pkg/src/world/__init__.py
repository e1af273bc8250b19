"""Environment representation: occupancy grid for search, obstacle cloud for clearance."""

from src.world.cloud import ObstacleCloud
from src.world.grid import OccupancyGrid
from src.world.io import load_cloud, load_grid, load_world, save_cloud, save_grid, save_world
from src.world.scenes import SceneKind, SceneLayout, SceneParams, generate_scene
from src.world.world import World

__all__ = [
    "ObstacleCloud",
    "OccupancyGrid",
    "SceneKind",
    "SceneLayout",
    "SceneParams",
    "World",
    "generate_scene",
    "load_cloud",
    "load_grid",
    "load_world",
    "save_cloud",
    "save_grid",
    "save_world",
]
