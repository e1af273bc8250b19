"""Input validation utilities for world files, vectors and outputs."""

import hashlib
import math
from collections.abc import Sequence
from pathlib import Path

from src.shared.exceptions import ValidationError


def require_file(file_path: str | Path) -> Path:
    """Return the path if it names an existing regular file.

    Args:
        file_path: Path to check

    Returns:
        The path as a ``Path``

    Raises:
        FileNotFoundError: If file does not exist

    Example:
        >>> require_file("scenes/corridor/grid.occ")
        PosixPath('scenes/corridor/grid.occ')
    """
    path = Path(file_path)
    if not path.is_file():
        raise FileNotFoundError(f"File not found: {path}")
    return path


def validate_finite_vector(values: Sequence[float], *, size: int = 3, name: str = "vector") -> tuple[float, ...]:
    """Validate a fixed-size vector of finite floats.

    Args:
        values: Components to check
        size: Required number of components
        name: Label used in the error message

    Returns:
        The components as a tuple of floats

    Raises:
        ValidationError: If the size is wrong or a component is NaN/inf

    Example:
        >>> validate_finite_vector([0, 0, 1.5], name="start")
        (0.0, 0.0, 1.5)
    """
    if len(values) != size:
        raise ValidationError(
            f"{name} must have {size} components, got {len(values)}",
            details={"name": name, "size": len(values)},
        )
    out = tuple(float(v) for v in values)
    if not all(math.isfinite(v) for v in out):
        raise ValidationError(f"{name} must be finite, got {out}", details={"name": name})
    return out


def content_hash(file_path: str | Path) -> str:
    """Generate SHA-256 hash of file content.

    Used to log output fingerprints so reruns can be compared.

    Args:
        file_path: Path to the file

    Returns:
        Hexadecimal SHA-256 hash string (64 characters)

    Raises:
        FileNotFoundError: If file does not exist
    """
    path = require_file(file_path)
    sha256_hash = hashlib.sha256()

    with path.open("rb") as f:
        for byte_block in iter(lambda: f.read(4096), b""):
            sha256_hash.update(byte_block)

    return sha256_hash.hexdigest()
