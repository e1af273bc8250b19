"""Trajectory, tether and record files written by a scenario run."""

from pathlib import Path

import numpy as np
import structlog

from src.catenary.solver import sample_tether
from src.core.types import ORIGIN, Point3, Trajectory, TrajectoryKind
from src.shared.exceptions import InvariantViolationError, ParseError
from src.shared.validators import content_hash, require_file
from src.world.io import content_lines, format_float, parse_float, save_cloud

logger = structlog.get_logger(__name__)

TRAJECTORY_HEADER = "# t x y z l"


def write_trajectory(t: Trajectory, path: Path) -> Path:
    """Write one ``t x y z l`` line per state, ``t`` cumulative from 0."""
    rows = [TRAJECTORY_HEADER]
    for stamp, state in zip(t.times(), t.states, strict=True):
        p = state.position
        values = (stamp, p.x, p.y, p.z, state.tether_length)
        rows.append(" ".join(format_float(v) for v in values))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    logger.info("Trajectory written", path=str(path), states=len(t), sha256=content_hash(path))
    return path


def read_trajectory(path: Path, anchor: Point3 = ORIGIN, kind: TrajectoryKind = TrajectoryKind.INITIAL) -> Trajectory:
    """Parse a trajectory file; time increments come from successive ``t`` values.

    Stamps are written with round-trip precision, so a rebuilt increment is
    off by about one ulp of the elapsed time (under 1e-12 s after an hour).

    Raises:
        ParseError: On malformed lines or when the states break a trajectory invariant
    """
    source = require_file(path)
    name = str(source)
    rows = []
    for line, offset, content in content_lines(source.read_text(encoding="utf-8")):
        tokens = content.split()
        if len(tokens) != 5:
            raise ParseError(f"expected 't x y z l', got {content!r}", path=name, line=line, offset=offset)
        rows.append([parse_float(tok, path=name, line=line, offset=offset) for tok in tokens])
    if not rows:
        raise ParseError("trajectory file has no states", path=name)

    data = np.array(rows, dtype=np.float64)
    dts = np.concatenate([[0.0], np.diff(data[:, 0])])
    try:
        return Trajectory.from_arrays(data[:, 1:4], data[:, 4], dts, anchor=anchor, kind=kind)
    except InvariantViolationError as exc:
        raise ParseError(f"invalid trajectory at state {exc.index}: {exc.message}", path=name) from exc


def write_tethers(t: Trajectory, out_dir: Path, m: int) -> list[Path]:
    """Write the tether of every state as ``tether_###.xyz`` in cloud format."""
    out_dir.mkdir(parents=True, exist_ok=True)
    anchor = t.anchor.as_array()
    paths = []
    for i, (p, length) in enumerate(zip(t.positions(), t.tether_lengths(), strict=True)):
        chord = float(np.linalg.norm(p - anchor))
        points = sample_tether(anchor, p, max(float(length), chord), m)
        header = f"tether state {i} length {format_float(length)}"
        paths.append(save_cloud(points, out_dir / f"tether_{i:03d}.xyz", header=header))
    logger.info("Tethers written", directory=str(out_dir), count=len(paths))
    return paths


def write_records(t: Trajectory, path: Path) -> Path:
    """Write the trajectory as a JSON record."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(t.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path
