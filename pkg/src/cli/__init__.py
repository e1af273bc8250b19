"""Batch front end: scenario loading, pipeline runs and output files."""

from src.cli.scenario import ScenarioSpec, WorldFiles, load_scenario, run_scenario

__all__ = ["ScenarioSpec", "WorldFiles", "load_scenario", "run_scenario"]
