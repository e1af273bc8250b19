"""Integration tests for the tethertraj command line."""

from collections.abc import Callable, Iterator
from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

from src.cli.main import app, parse_scene_params
from src.cli.scenario import load_scenario
from src.core.types import Point3
from src.shared.config import settings
from src.shared.exceptions import ConfigurationError
from src.shared.logging_config import configure_logging
from src.world.grid import OccupancyGrid
from src.world.world import World
from tests.fixtures.sample_data import create_empty_grid

pytestmark = pytest.mark.integration

runner = CliRunner()

FAST = ["--set", "optimizer.max_iterations=15"]


@pytest.fixture(autouse=True)
def _restore_logging() -> Iterator[None]:
    """Point logging back at the live stderr after the runner swaps streams."""
    yield
    configure_logging("WARNING", "json")


@pytest.fixture
def open_scenario(write_scenario: Callable[..., Path]) -> Path:
    """Provide a scenario in an empty world with a short diagonal flight.

    Returns:
        Path: Scenario YAML file
    """
    return write_scenario(World(create_empty_grid()), (0.0, 0.0, 1.0), (3.0, 1.0, 1.5), name="open")


def _enclosed_goal_world() -> tuple[World, Point3]:
    """A goal cell whose 26 neighbours are all occupied."""
    dims = (12, 8, 6)
    occupancy = np.zeros(dims, dtype=bool)
    occupancy[7:10, 2:5, 1:4] = True
    occupancy[8, 3, 2] = False
    grid = OccupancyGrid(resolution=0.5, origin=Point3(x=-1.0, y=-2.0, z=0.0), dims=dims, occupancy=occupancy)
    return World.from_grid(grid), Point3(x=3.25, y=-0.25, z=1.25)


class TestRunCommand:
    """Test suite for ``tethertraj run``."""

    def test_run_writes_all_outputs(self, open_scenario: Path) -> None:
        """Test a successful run and its output files."""
        out = open_scenario.parent / "out"

        result = runner.invoke(app, ["run", "--config", str(open_scenario), *FAST, "--records"])

        assert result.exit_code == 0, result.output
        for name in ("initial.traj", "optimized.traj", "metrics.csv", "trace.csv", "tether_000.xyz", "optimized.json"):
            assert (out / name).is_file(), name
        assert "length_inflation=" in result.stdout

    def test_out_option_overrides_directory(self, open_scenario: Path, tmp_path: Path) -> None:
        """Test that --out redirects the outputs."""
        target = tmp_path / "elsewhere"

        result = runner.invoke(app, ["run", "-c", str(open_scenario), *FAST, "--out", str(target)])

        assert result.exit_code == 0, result.output
        assert (target / "optimized.traj").is_file()

    def test_walled_off_goal_exits_with_planning_code(self, write_scenario: Callable[..., Path]) -> None:
        """Test that an unreachable goal exits with 2 and writes nothing."""
        world, goal = _enclosed_goal_world()
        config = write_scenario(world, (0.0, 0.0, 1.0), goal.as_tuple())

        result = runner.invoke(
            app, ["run", "-c", str(config), "--set", "planner.l_max=6", "--set", "planner.eps_l=0.5"]
        )

        assert result.exit_code == 2
        assert not (config.parent / "out" / "optimized.traj").exists()

    def test_missing_config_exits_with_io_code(self, tmp_path: Path) -> None:
        """Test that a missing scenario file exits with 4."""
        result = runner.invoke(app, ["run", "-c", str(tmp_path / "absent.yaml")])

        assert result.exit_code == 4

    def test_bad_override_exits_with_io_code(self, open_scenario: Path) -> None:
        """Test that an unknown parameter exits with 4."""
        result = runner.invoke(app, ["run", "-c", str(open_scenario), "--set", "optimizer.gamma_x=1"])

        assert result.exit_code == 4

    def test_reruns_are_byte_identical(self, open_scenario: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that two runs without timing produce identical files."""
        monkeypatch.setattr(settings, "record_timing", False)
        out = open_scenario.parent / "out"
        contents = []
        for _ in range(2):
            result = runner.invoke(app, ["run", "-c", str(open_scenario), *FAST])
            assert result.exit_code == 0, result.output
            contents.append({name: (out / name).read_bytes() for name in ("optimized.traj", "metrics.csv")})

        assert contents[0] == contents[1]


class TestStagedCommands:
    """Test suite for plan, optimize and metrics run separately."""

    def test_plan_optimize_metrics(self, open_scenario: Path) -> None:
        """Test the three stages chained through files."""
        out = open_scenario.parent / "out"

        planned = runner.invoke(app, ["plan", "-c", str(open_scenario)])
        optimized = runner.invoke(app, ["optimize", "-c", str(open_scenario), *FAST])
        measured = runner.invoke(
            app,
            [
                "metrics",
                "-c",
                str(open_scenario),
                "--initial",
                str(out / "initial.traj"),
                "--optimized",
                str(out / "optimized.traj"),
            ],
        )

        assert planned.exit_code == 0, planned.output
        assert optimized.exit_code == 0, optimized.output
        assert measured.exit_code == 0, measured.output
        assert (out / "metrics.csv").is_file()
        assert any(line.startswith("metric") for line in measured.stdout.splitlines())

    def test_optimize_without_initial_file(self, open_scenario: Path) -> None:
        """Test that optimizing before planning exits with 4."""
        result = runner.invoke(app, ["optimize", "-c", str(open_scenario)])

        assert result.exit_code == 4


class TestGenScene:
    """Test suite for ``tethertraj gen-scene``."""

    def test_generates_loadable_scenario(self, tmp_path: Path) -> None:
        """Test that a generated scene comes with a scenario that loads."""
        result = runner.invoke(app, ["gen-scene", "corridor", "--out", str(tmp_path), "--seed-scene", "seed=1"])

        assert result.exit_code == 0, result.output
        spec = load_scenario(tmp_path / "scenario.yaml")
        assert spec.name == "corridor"
        assert spec.world.grid == tmp_path / "grid.occ"
        assert spec.output_dir == tmp_path / "results"

    def test_bad_scene_parameters(self, tmp_path: Path) -> None:
        """Test that unknown scene parameters exit with 4."""
        result = runner.invoke(app, ["gen-scene", "open", "--out", str(tmp_path), "--seed-scene", "colour=red"])

        assert result.exit_code == 4

    def test_parse_scene_params(self) -> None:
        """Test parsing of comma-separated scene parameters."""
        params = parse_scene_params("density=0.1, seed=4")

        assert params.density == 0.1
        assert params.seed == 4
        assert parse_scene_params(None).seed == 0
        with pytest.raises(ConfigurationError):
            parse_scene_params("density")
