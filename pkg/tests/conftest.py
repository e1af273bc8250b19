"""Shared pytest fixtures for all tests.

This module provides fixtures for:
- Seeded random generators
- Empty, single-obstacle and corridor worlds
- Default planner and optimizer configurations
- Scenario files written to a temporary directory
"""

from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest
import yaml
from config.settings import Settings

from src.optimizer.config import OptConfig
from src.planner.config import PlannerConfig
from src.world.cloud import ObstacleCloud
from src.world.io import save_world
from src.world.scenes import SceneKind, SceneLayout, generate_scene
from src.world.world import World
from tests.fixtures.sample_data import create_empty_grid

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng() -> np.random.Generator:
    """Provide a seeded random generator so property tests are reproducible.

    Returns:
        np.random.Generator: Generator with a fixed seed
    """
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def test_settings() -> Settings:
    """Provide test configuration settings.

    Returns:
        Settings: Settings with deterministic outputs
    """
    return Settings(
        log_level="DEBUG",
        log_format="json",
        grid_resolution=0.2,
        tether_points=32,
        output_dir="./test_out",
        write_trace=True,
        record_timing=False,
    )


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def empty_world() -> World:
    """Provide an obstacle-free world spanning x in [-5, 10], y in [-5, 5], z in [-1, 5].

    Returns:
        World: Empty grid with an empty cloud
    """
    return World(create_empty_grid())


@pytest.fixture
def single_obstacle_world() -> World:
    """Provide the empty grid with one cloud point at (3, 0.3, 1).

    Returns:
        World: Grid-free world whose only obstacle is a single cloud point
    """
    return World(create_empty_grid(), ObstacleCloud([[3.0, 0.3, 1.0]]))


@pytest.fixture
def planner_config() -> PlannerConfig:
    return PlannerConfig()


@pytest.fixture
def opt_config() -> OptConfig:
    return OptConfig()


@pytest.fixture(scope="session")
def corridor_layout() -> SceneLayout:
    """Provide the generated corridor scene (shared, worlds are read-only).

    Returns:
        SceneLayout: Corridor world with its start, goal and anchor
    """
    return generate_scene(SceneKind.CORRIDOR)


@pytest.fixture
def write_scenario(tmp_path: Path) -> Callable[..., Path]:
    """Provide a factory that writes a world and scenario YAML into ``tmp_path``.

    Returns:
        Callable: ``factory(world, start, goal, **extra) -> scenario path``
    """

    def factory(
        world: World,
        start: tuple[float, float, float],
        goal: tuple[float, float, float],
        *,
        name: str = "test",
        anchor: tuple[float, float, float] = (0.0, 0.0, 0.0),
        **extra: Any,
    ) -> Path:
        save_world(world, tmp_path / "grid.occ", tmp_path / "cloud.xyz")
        data: dict[str, Any] = {
            "name": name,
            "world": {"grid": "grid.occ", "cloud": "cloud.xyz"},
            "anchor": list(anchor),
            "start": list(start),
            "goal": list(goal),
            "output_dir": str(tmp_path / "out"),
        }
        data.update(extra)
        path = tmp_path / "scenario.yaml"
        path.write_text(yaml.safe_dump(data, sort_keys=False), encoding="utf-8")
        return path

    return factory
