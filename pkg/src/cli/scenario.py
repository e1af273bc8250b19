"""Scenario files and the plan -> interpolate -> optimize pipeline.

A scenario file is YAML::

    name: corridor
    world: {grid: grid.occ, cloud: cloud.xyz}
    anchor: [0.0, 0.0, 0.0]
    start: [0.0, 0.0, 1.5]
    goal: [13.0, 0.0, 1.5]
    planner: {l_max: 20.0}
    optimizer: {max_iterations: 100}
    output_dir: out/corridor

World paths are resolved relative to the scenario file.
"""

import time
from pathlib import Path
from typing import Any

import pydantic
import structlog
import typer
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.cli.outputs import write_records, write_tethers, write_trajectory
from src.core.types import ORIGIN, Point3, Trajectory
from src.evaluation.metrics import TrajectoryMetrics, compare, compute_metrics
from src.evaluation.report import format_comparison, write_metrics_csv
from src.optimizer.config import OptConfig
from src.optimizer.levenberg_marquardt import LevenbergMarquardt, SolveReport
from src.optimizer.problem import build_problem
from src.optimizer.trace import write_trace
from src.planner.config import PlannerConfig
from src.planner.interpolation import interpolate_path
from src.planner.lazy_theta import plan_path
from src.shared.config import settings
from src.shared.exceptions import (
    ConfigurationError,
    OptimizationError,
    ParseError,
    PlanningError,
    TetherTrajError,
)
from src.shared.metrics import record_error, track_duration
from src.shared.validators import require_file, validate_finite_vector
from src.world.io import load_world
from src.world.world import World

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PLANNING = 2
EXIT_OPTIMIZATION = 3
EXIT_IO = 4


class WorldFiles(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    grid: Path = Field(..., description="Occupancy grid file (occgrid v1)")
    cloud: Path = Field(..., description="Obstacle cloud file (x y z per line)")


class ScenarioSpec(BaseModel):
    """Everything one pipeline run needs."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(default="scenario", min_length=1)
    world: WorldFiles
    anchor: Point3 = ORIGIN
    start: Point3
    goal: Point3
    planner: PlannerConfig = Field(default_factory=PlannerConfig)
    optimizer: OptConfig = Field(default_factory=OptConfig)
    output_dir: Path = Field(default_factory=lambda: Path(settings.output_dir))

    @field_validator("anchor", "start", "goal", mode="before")
    @classmethod
    def _parse_point(cls, value: Any) -> Any:
        if isinstance(value, list | tuple):
            return Point3.of(validate_finite_vector(value, name="point"))
        return value

    @model_validator(mode="after")
    def _check_endpoints(self) -> "ScenarioSpec":
        if self.start == self.goal:
            raise ConfigurationError("start and goal coincide", details={"start": self.start.as_tuple()})
        return self

    @property
    def signature(self) -> str:
        """Scenario, start and goal in one label."""
        start = " ".join(f"{v:g}" for v in self.start.as_tuple())
        goal = " ".join(f"{v:g}" for v in self.goal.as_tuple())
        return f"{self.name} [{start}] -> [{goal}]"


# ============================================================================
# Loading
# ============================================================================


def _apply_override(raw: dict[str, Any], item: str) -> None:
    key, sep, text = item.partition("=")
    if not sep or not key.strip():
        raise ConfigurationError(f"override must look like key=value, got {item!r}", details={"override": item})
    *parents, leaf = key.strip().split(".")
    node = raw
    for part in parents:
        child = node.get(part)
        if child is None:
            child = node[part] = {}
        if not isinstance(child, dict):
            raise ConfigurationError(f"cannot override {key!r}: {part!r} is not a section", details={"key": key})
        node = child
    node[leaf] = yaml.safe_load(text) if text.strip() else None


def _apply_defaults(raw: dict[str, Any], base_dir: Path) -> None:
    planner = raw.get("planner") or {}
    optimizer = raw.get("optimizer") or {}
    planner.setdefault("m", settings.tether_points)
    optimizer.setdefault("m", planner["m"])
    optimizer.setdefault("l_max", planner.get("l_max", PlannerConfig.model_fields["l_max"].default))
    raw["planner"], raw["optimizer"] = planner, optimizer

    world = raw.get("world")
    if isinstance(world, dict):
        for key in ("grid", "cloud"):
            if isinstance(world.get(key), str):
                world[key] = str(base_dir / world[key])


def scenario_from_dict(raw: dict[str, Any], *, base_dir: Path, overrides: list[str] | None = None) -> ScenarioSpec:
    """Validate a scenario mapping after applying ``key=value`` overrides.

    Raises:
        ConfigurationError: On unknown keys, bad values or coinciding endpoints
    """
    data = dict(raw)
    for item in overrides or []:
        _apply_override(data, item)
    _apply_defaults(data, base_dir)
    try:
        return ScenarioSpec.model_validate(data)
    except pydantic.ValidationError as exc:
        raise ConfigurationError(
            f"invalid scenario: {exc.error_count()} error(s)",
            details={"errors": [f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors()]},
        ) from exc
    except TetherTrajError as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"invalid scenario: {exc.message}", details=exc.details) from exc


def load_scenario(config_path: Path, overrides: list[str] | None = None) -> ScenarioSpec:
    """Read a YAML scenario file.

    Raises:
        FileNotFoundError: If the file does not exist
        ParseError: If the file is not valid YAML
        ConfigurationError: If the content does not describe a scenario
    """
    source = require_file(config_path)
    try:
        raw = yaml.safe_load(source.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(
            f"invalid YAML: {exc}",
            path=str(source),
            line=mark.line + 1 if mark is not None else None,
            offset=mark.index if mark is not None else None,
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigurationError("scenario file must contain a mapping", details={"path": str(source)})
    spec = scenario_from_dict(raw, base_dir=source.parent, overrides=overrides)
    logger.info("Scenario loaded", path=str(source), name=spec.name, overrides=len(overrides or []))
    return spec


def scenario_yaml(spec: ScenarioSpec) -> str:
    """Serialize a scenario back to YAML (paths as given)."""
    data = spec.model_dump(mode="json")
    for key in ("anchor", "start", "goal"):
        data[key] = list(getattr(spec, key).as_tuple())
    return yaml.safe_dump(data, sort_keys=False)


# ============================================================================
# Pipeline
# ============================================================================


def load_scenario_world(spec: ScenarioSpec) -> World:
    return load_world(spec.world.grid, spec.world.cloud, outside_is_obstacle=settings.outside_is_obstacle)


def plan_initial(spec: ScenarioSpec, world: World) -> tuple[Trajectory, float]:
    """Plan and interpolate; returns the initial trajectory and the seconds spent."""
    started = time.perf_counter()
    waypoints = plan_path(spec.start, spec.goal, spec.planner, world, spec.anchor)
    initial = interpolate_path(waypoints, spec.planner, world, spec.anchor)
    return initial, time.perf_counter() - started


def optimize_initial(initial: Trajectory, world: World, cfg: OptConfig) -> tuple[SolveReport, float]:
    """Refine an initial trajectory; returns the solve report and the seconds spent."""
    started = time.perf_counter()
    report = LevenbergMarquardt(cfg).run(build_problem(initial, world, cfg))
    return report, time.perf_counter() - started


def write_evaluation(
    spec: ScenarioSpec,
    world: World,
    initial: Trajectory,
    optimized: Trajectory,
    timings: tuple[float, float],
    out_dir: Path,
    *,
    record_timing: bool,
) -> tuple[TrajectoryMetrics, TrajectoryMetrics]:
    """Compute both metric sets, write ``metrics.csv`` and echo the comparison."""
    initial_metrics = compute_metrics(initial, world, spec.optimizer, compute_time=timings[0])
    optimized_metrics = compute_metrics(optimized, world, spec.optimizer, compute_time=timings[1])
    write_metrics_csv(
        out_dir / "metrics.csv", spec.signature, initial_metrics, optimized_metrics, record_timing=record_timing
    )
    typer.echo(format_comparison(compare(initial_metrics, optimized_metrics)))
    return initial_metrics, optimized_metrics


@track_duration("scenario_duration_seconds")
def execute_scenario(
    spec: ScenarioSpec,
    *,
    write_trace_file: bool | None = None,
    record_timing: bool | None = None,
    records: bool = False,
) -> SolveReport:
    """Run the full pipeline and write every output file.

    Nothing is written unless planning and optimization both succeed.
    """
    trace_enabled = settings.write_trace if write_trace_file is None else write_trace_file
    timing_enabled = settings.record_timing if record_timing is None else record_timing

    world = load_scenario_world(spec)
    initial, plan_seconds = plan_initial(spec, world)
    report, optimize_seconds = optimize_initial(initial, world, spec.optimizer)
    optimized = report.trajectory

    out_dir = spec.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    write_trajectory(initial, out_dir / "initial.traj")
    write_trajectory(optimized, out_dir / "optimized.traj")
    write_tethers(optimized, out_dir, spec.optimizer.m)
    if trace_enabled:
        write_trace(report, out_dir / "trace.csv")
    if records:
        write_records(initial, out_dir / "initial.json")
        write_records(optimized, out_dir / "optimized.json")
    write_evaluation(
        spec, world, initial, optimized, (plan_seconds, optimize_seconds), out_dir, record_timing=timing_enabled
    )
    logger.info(
        "Scenario finished",
        name=spec.name,
        output_dir=str(out_dir),
        states=len(optimized),
        iterations=report.iterations,
        reason=report.reason.value,
    )
    return report


# ============================================================================
# Exit codes
# ============================================================================


def classify_error(exc: BaseException) -> tuple[int, str]:
    """Map an exception to an exit code and an error type label."""
    if isinstance(exc, PlanningError):
        return EXIT_PLANNING, "planning_error"
    if isinstance(exc, OptimizationError):
        return EXIT_OPTIMIZATION, "optimization_error"
    if isinstance(exc, ParseError):
        return EXIT_IO, "parse_error"
    if isinstance(exc, ConfigurationError):
        return EXIT_IO, "configuration_error"
    if isinstance(exc, OSError):
        return EXIT_IO, "io_error"
    if isinstance(exc, TetherTrajError):
        return EXIT_FAILURE, "application_error"
    return EXIT_FAILURE, "internal_error"


def report_failure(exc: BaseException, operation: str) -> int:
    """Log a failed command and return its exit code."""
    code, error_type = classify_error(exc)
    record_error(error_type, operation)
    logger.error(
        "Command failed",
        operation=operation,
        exit_code=code,
        error_type=error_type,
        error_message=str(exc),
        exception_type=type(exc).__name__,
        details=getattr(exc, "details", {}),
    )
    return code


def run_scenario(
    spec: ScenarioSpec,
    *,
    write_trace_file: bool | None = None,
    record_timing: bool | None = None,
    records: bool = False,
) -> int:
    """Run a scenario and return its exit status (0 on success)."""
    try:
        execute_scenario(spec, write_trace_file=write_trace_file, record_timing=record_timing, records=records)
    except (TetherTrajError, OSError) as exc:
        return report_failure(exc, "run")
    return EXIT_OK
