"""Command line entry point: ``tethertraj run|plan|optimize|gen-scene|metrics``."""

import time
from pathlib import Path
from typing import Annotated

import pydantic
import structlog
import typer
import yaml

from src.cli.outputs import read_trajectory, write_records, write_tethers, write_trajectory
from src.cli.scenario import (
    EXIT_OK,
    ScenarioSpec,
    WorldFiles,
    load_scenario,
    load_scenario_world,
    optimize_initial,
    plan_initial,
    report_failure,
    run_scenario,
    scenario_yaml,
    write_evaluation,
)
from src.core.types import TrajectoryKind
from src.optimizer.trace import write_trace
from src.shared.config import settings
from src.shared.exceptions import ConfigurationError, TetherTrajError
from src.shared.logging_config import configure_logging
from src.shared.metrics import log_metrics_snapshot
from src.world.io import save_world
from src.world.scenes import SceneKind, SceneParams, generate_scene

logger = structlog.get_logger(__name__)

app = typer.Typer(
    name="tethertraj",
    help="Plan and optimize trajectories for a UAV tethered to a ground anchor.",
    no_args_is_help=True,
    add_completion=False,
)

ConfigOption = Annotated[Path, typer.Option("--config", "-c", help="Scenario YAML file")]
SetOption = Annotated[
    list[str] | None, typer.Option("--set", help="Override a scenario value, e.g. optimizer.max_iterations=50")
]
OutOption = Annotated[Path | None, typer.Option("--out", "-o", help="Output directory")]
RecordsOption = Annotated[bool, typer.Option("--records", help="Also write trajectories as JSON records")]


@app.callback()
def main() -> None:
    configure_logging(settings.log_level, settings.log_format)


def _scenario(config: Path, overrides: list[str] | None, out: Path | None) -> ScenarioSpec:
    items = list(overrides or [])
    if out is not None:
        items.append(f"output_dir={out}")
    return load_scenario(config, items)


def _finish(code: int) -> None:
    log_metrics_snapshot()
    if code != EXIT_OK:
        raise typer.Exit(code)


@app.command()
def run(
    config: ConfigOption,
    overrides: SetOption = None,
    out: OutOption = None,
    records: RecordsOption = False,
) -> None:
    """Plan, interpolate and optimize; write trajectories, tethers, metrics and trace."""
    try:
        spec = _scenario(config, overrides, out)
    except (TetherTrajError, OSError) as exc:
        _finish(report_failure(exc, "run"))
    _finish(run_scenario(spec, records=records))


@app.command()
def plan(
    config: ConfigOption,
    overrides: SetOption = None,
    out: OutOption = None,
    records: RecordsOption = False,
) -> None:
    """Plan and interpolate only; write ``initial.traj``."""
    try:
        spec = _scenario(config, overrides, out)
        initial, seconds = plan_initial(spec, load_scenario_world(spec))
        write_trajectory(initial, spec.output_dir / "initial.traj")
        if records:
            write_records(initial, spec.output_dir / "initial.json")
        logger.info("Plan finished", states=len(initial), length=round(initial.path_length(), 4), seconds=seconds)
    except (TetherTrajError, OSError) as exc:
        _finish(report_failure(exc, "plan"))
    _finish(EXIT_OK)


@app.command()
def optimize(
    config: ConfigOption,
    initial_file: Annotated[
        Path | None, typer.Option("--initial", help="Initial trajectory (default: <out>/initial.traj)")
    ] = None,
    overrides: SetOption = None,
    out: OutOption = None,
    records: RecordsOption = False,
) -> None:
    """Optimize an existing ``initial.traj``; write the optimized trajectory, metrics and trace."""
    try:
        spec = _scenario(config, overrides, out)
        world = load_scenario_world(spec)
        initial = read_trajectory(initial_file or spec.output_dir / "initial.traj", spec.anchor)
        report, seconds = optimize_initial(initial, world, spec.optimizer)
        out_dir = spec.output_dir
        write_trajectory(report.trajectory, out_dir / "optimized.traj")
        write_tethers(report.trajectory, out_dir, spec.optimizer.m)
        if settings.write_trace:
            write_trace(report, out_dir / "trace.csv")
        if records:
            write_records(report.trajectory, out_dir / "optimized.json")
        write_evaluation(
            spec, world, initial, report.trajectory, (0.0, seconds), out_dir, record_timing=settings.record_timing
        )
    except (TetherTrajError, OSError) as exc:
        _finish(report_failure(exc, "optimize"))
    _finish(EXIT_OK)


@app.command()
def metrics(
    config: ConfigOption,
    initial_file: Annotated[Path, typer.Option("--initial", help="Initial trajectory file")],
    optimized_file: Annotated[Path, typer.Option("--optimized", help="Optimized trajectory file")],
    overrides: SetOption = None,
    out: OutOption = None,
) -> None:
    """Recompute metrics for existing trajectory files and print the comparison."""
    try:
        spec = _scenario(config, overrides, out)
        world = load_scenario_world(spec)
        initial = read_trajectory(initial_file, spec.anchor)
        optimized = read_trajectory(optimized_file, spec.anchor, TrajectoryKind.OPTIMIZED)
        write_evaluation(spec, world, initial, optimized, (0.0, 0.0), spec.output_dir, record_timing=False)
    except (TetherTrajError, OSError) as exc:
        _finish(report_failure(exc, "metrics"))
    _finish(EXIT_OK)


def parse_scene_params(text: str | None) -> SceneParams:
    """Parse ``key=value,key=value`` into scene parameters.

    Raises:
        ConfigurationError: On malformed pairs or unknown keys
    """
    values = {}
    for pair in filter(None, (p.strip() for p in (text or "").split(","))):
        key, sep, raw = pair.partition("=")
        if not sep:
            raise ConfigurationError(f"scene parameter must look like key=value, got {pair!r}")
        values[key.strip()] = yaml.safe_load(raw)
    try:
        return SceneParams.model_validate(values)
    except pydantic.ValidationError as exc:
        raise ConfigurationError(f"invalid scene parameters: {text}", details={"errors": str(exc)}) from exc


@app.command("gen-scene")
def gen_scene(
    kind: Annotated[SceneKind, typer.Argument(help="Scene family")],
    out: Annotated[Path, typer.Option("--out", "-o", help="Directory for grid.occ, cloud.xyz and scenario.yaml")],
    seed_scene: Annotated[
        str | None, typer.Option("--seed-scene", help="Scene parameters, e.g. resolution=0.2,seed=3")
    ] = None,
) -> None:
    """Generate a synthetic scene and a scenario file that runs it."""
    try:
        started = time.perf_counter()
        layout = generate_scene(kind, parse_scene_params(seed_scene))
        out.mkdir(parents=True, exist_ok=True)
        save_world(layout.world, out / "grid.occ", out / "cloud.xyz")
        spec = ScenarioSpec(
            name=kind.value,
            world=WorldFiles(grid=Path("grid.occ"), cloud=Path("cloud.xyz")),
            anchor=layout.anchor,
            start=layout.start,
            goal=layout.goal,
            output_dir=out / "results",
        )
        (out / "scenario.yaml").write_text(scenario_yaml(spec), encoding="utf-8")
        logger.info("Scene written", kind=kind.value, directory=str(out), seconds=time.perf_counter() - started)
    except (TetherTrajError, OSError) as exc:
        _finish(report_failure(exc, "gen-scene"))
    _finish(EXIT_OK)


if __name__ == "__main__":
    app()
