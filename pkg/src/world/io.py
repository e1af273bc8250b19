"""Reading and writing grid (``occgrid v1``) and cloud files.

Grid file::

    occgrid v1
    resolution 0.2
    origin -1.0 -3.0 0.0
    dims 60 30 20
    0 1234
    1 12
    ...

Header keys may appear in any order after the version line. Body lines are
run-length pairs ``<0|1> <count>`` over the C-order flattened occupancy.
Cloud file: one ``x y z`` per line. Both formats allow ``#`` comments and
blank lines. Floats are written with ``repr`` so files round-trip bit-exactly.
"""

import math
from collections.abc import Iterator
from pathlib import Path

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from src.core.types import Point3
from src.shared.exceptions import DimensionMismatchError, ParseError
from src.shared.validators import require_file
from src.world.cloud import ObstacleCloud
from src.world.grid import OccupancyGrid
from src.world.world import World

logger = structlog.get_logger(__name__)

GRID_MAGIC = "occgrid v1"
_HEADER_KEYS = ("resolution", "origin", "dims")


def format_float(value: float) -> str:
    return repr(float(value))


def content_lines(text: str) -> Iterator[tuple[int, int, str]]:
    """Yield (1-based line number, byte offset, stripped content) for non-comment lines."""
    offset = 0
    for number, raw in enumerate(text.splitlines(keepends=True), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, offset, content
        offset += len(raw.encode("utf-8"))


def parse_float(token: str, *, path: str, line: int, offset: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"expected a number, got {token!r}", path=path, line=line, offset=offset) from None
    if not math.isfinite(value):
        raise ParseError(f"expected a finite number, got {token!r}", path=path, line=line, offset=offset)
    return value


# ============================================================================
# Grid files
# ============================================================================


def save_grid(grid: OccupancyGrid, path: str | Path) -> Path:
    """Write a grid in ``occgrid v1`` format."""
    out = Path(path)
    origin = grid.origin
    lines = [
        GRID_MAGIC,
        f"resolution {format_float(grid.resolution)}",
        f"origin {format_float(origin.x)} {format_float(origin.y)} {format_float(origin.z)}",
        f"dims {grid.dims[0]} {grid.dims[1]} {grid.dims[2]}",
    ]
    flat = grid.occupancy.ravel(order="C").astype(np.int8)
    if len(flat):
        change = np.flatnonzero(np.diff(flat)) + 1
        starts = np.concatenate([[0], change])
        counts = np.diff(np.concatenate([starts, [len(flat)]]))
        lines.extend(f"{int(flat[s])} {int(c)}" for s, c in zip(starts, counts, strict=True))
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return out


def _parse_header(
    entries: list[tuple[int, int, str]], path: str
) -> tuple[float, Point3, tuple[int, int, int], int]:
    """Parse the version line and header keys; return them and the body start index."""
    if not entries or entries[0][2] != GRID_MAGIC:
        line, offset = (entries[0][0], entries[0][1]) if entries else (1, 0)
        raise DimensionMismatchError(f"missing '{GRID_MAGIC}' header", path=path, line=line, offset=offset)

    header: dict[str, tuple[list[str], int, int]] = {}
    index = 1
    while index < len(entries) and len(header) < len(_HEADER_KEYS):
        line, offset, content = entries[index]
        key, *values = content.split()
        if key not in _HEADER_KEYS:
            break
        if key in header:
            raise DimensionMismatchError(f"duplicate header key '{key}'", path=path, line=line, offset=offset)
        header[key] = (values, line, offset)
        index += 1

    missing = [k for k in _HEADER_KEYS if k not in header]
    if missing:
        line, offset, _ = entries[index] if index < len(entries) else entries[-1]
        raise DimensionMismatchError(f"missing header keys {missing}", path=path, line=line, offset=offset)

    values, line, offset = header["resolution"]
    if len(values) != 1:
        raise DimensionMismatchError("resolution takes one value", path=path, line=line, offset=offset)
    resolution = parse_float(values[0], path=path, line=line, offset=offset)
    if resolution <= 0.0:
        raise DimensionMismatchError("resolution must be positive", path=path, line=line, offset=offset)

    values, line, offset = header["origin"]
    if len(values) != 3:
        raise DimensionMismatchError("origin takes three values", path=path, line=line, offset=offset)
    origin = Point3.of([parse_float(v, path=path, line=line, offset=offset) for v in values])

    values, line, offset = header["dims"]
    try:
        dims = tuple(int(v) for v in values)
    except ValueError:
        raise DimensionMismatchError("dims must be integers", path=path, line=line, offset=offset) from None
    if len(dims) != 3 or any(n < 1 for n in dims):
        raise DimensionMismatchError("dims takes three positive integers", path=path, line=line, offset=offset)

    return resolution, origin, (dims[0], dims[1], dims[2]), index


def load_grid(path: str | Path, *, outside_is_obstacle: bool = True) -> OccupancyGrid:
    """Parse an ``occgrid v1`` file.

    Raises:
        DimensionMismatchError: Malformed header or more cells than ``dims``
        ParseError: Malformed run-length line or truncated body
    """
    source = require_file(path)
    data = source.read_bytes()
    name = str(source)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("file is not valid UTF-8", path=name, offset=exc.start) from None

    entries = list(content_lines(text))
    resolution, origin, dims, body_start = _parse_header(entries, name)
    total = dims[0] * dims[1] * dims[2]

    flat = np.zeros(total, dtype=bool)
    filled = 0
    for line, offset, content in entries[body_start:]:
        tokens = content.split()
        if len(tokens) != 2 or tokens[0] not in ("0", "1"):
            raise ParseError(f"expected '<0|1> <count>', got {content!r}", path=name, line=line, offset=offset)
        try:
            count = int(tokens[1])
        except ValueError:
            raise ParseError(
                f"run length must be an integer, got {tokens[1]!r}", path=name, line=line, offset=offset
            ) from None
        if count < 1:
            raise ParseError("run length must be positive", path=name, line=line, offset=offset)
        if filled + count > total:
            raise DimensionMismatchError(
                f"runs cover more than {total} cells", path=name, line=line, offset=offset
            )
        flat[filled : filled + count] = tokens[0] == "1"
        filled += count

    if filled < total:
        raise ParseError(
            f"unexpected end of file: {filled} of {total} cells read",
            path=name,
            line=len(text.splitlines()) or 1,
            offset=len(data),
        )

    return OccupancyGrid(
        resolution=resolution,
        origin=origin,
        dims=dims,
        occupancy=flat.reshape(dims, order="C"),
        outside_is_obstacle=outside_is_obstacle,
    )


# ============================================================================
# Cloud files
# ============================================================================


def save_cloud(points: ArrayLike, path: str | Path, *, header: str | None = None) -> Path:
    """Write points one ``x y z`` triple per line."""
    out = Path(path)
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    lines = [f"# {header}"] if header else []
    lines.extend(f"{format_float(p[0])} {format_float(p[1])} {format_float(p[2])}" for p in pts)
    out.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    return out


def load_cloud(path: str | Path) -> NDArray[np.float64]:
    """Parse a cloud file into a (k, 3) array.

    Raises:
        ParseError: On a line that is not three finite numbers
    """
    source = require_file(path)
    data = source.read_bytes()
    name = str(source)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("file is not valid UTF-8", path=name, offset=exc.start) from None

    rows: list[tuple[float, float, float]] = []
    for line, offset, content in content_lines(text):
        tokens = content.split()
        if len(tokens) != 3:
            raise ParseError(f"expected 'x y z', got {content!r}", path=name, line=line, offset=offset)
        x, y, z = (parse_float(t, path=name, line=line, offset=offset) for t in tokens)
        rows.append((x, y, z))
    return np.array(rows, dtype=np.float64).reshape(-1, 3)


# ============================================================================
# Worlds
# ============================================================================


def load_world(grid_file: str | Path, cloud_file: str | Path, *, outside_is_obstacle: bool = True) -> World:
    """Load both representations of a world."""
    grid = load_grid(grid_file, outside_is_obstacle=outside_is_obstacle)
    cloud = ObstacleCloud(load_cloud(cloud_file))
    logger.info(
        "World loaded",
        grid=str(grid_file),
        cloud=str(cloud_file),
        cells=grid.n_cells,
        occupied=grid.n_occupied,
        points=len(cloud),
    )
    return World(grid, cloud)


def save_world(world: World, grid_file: str | Path, cloud_file: str | Path) -> tuple[Path, Path]:
    """Write both representations of a world."""
    return save_grid(world.grid, grid_file), save_cloud(world.cloud.points, cloud_file)
