"""Catenary solver for a tether hanging between the ground anchor and the UAV.

The scale parameter ``a`` of ``z(s) = a*cosh((s - x0)/a) + z0`` is the root of

    2*a*sinh(d / (2*a)) = sqrt(L**2 - h**2)

with ``d`` the horizontal anchor separation, ``h`` the signed rise and ``L``
the cable length. The left side decreases monotonically in ``a``, so plain
bisection on a bracketing interval is enough. Near-taut and near-vertical
configurations are handled as separate closed-form branches.
"""

import math

import numpy as np
import structlog
from numpy.typing import NDArray

from src.catenary.models import Catenary, CatenaryKind, TetherPolyline, vertical_points
from src.core.geometry import horizontal_frame
from src.core.types import Point3
from src.shared.exceptions import InvalidLengthError, NoConvergenceError, ValidationError
from src.shared.metrics import record_catenary_solve

logger = structlog.get_logger(__name__)

DEFAULT_TOLERANCE = 1e-12
DEFAULT_POINTS = 64

# Relative slack below which the cable is treated as a straight segment.
TAUT_TOLERANCE = 1e-6
# Horizontal separation below which the cable is treated as vertical.
MIN_HORIZONTAL = 1e-4

BRACKET_LOW = 1e-3
BRACKET_HIGH = 1e4
MAX_BISECTION_ITERATIONS = 200
MAX_BRACKET_EXPANSIONS = 60

# sinh overflows a float64 past ~710.
_SINH_LIMIT = 700.0


def _span_residual(a: float, horizontal: float, target: float) -> float:
    x = horizontal / (2.0 * a)
    if x > _SINH_LIMIT:
        return math.inf
    return 2.0 * a * math.sinh(x) - target


def scale_parameter(horizontal: float, rise: float, length: float, tol: float = DEFAULT_TOLERANCE) -> float:
    """Solve the catenary scale parameter by bisection.

    Args:
        horizontal: Horizontal anchor separation d (> 0)
        rise: Signed vertical separation h
        length: Cable length L (> sqrt(d**2 + h**2))
        tol: Stop once the absolute residual is at most this value

    Returns:
        The scale parameter ``a``

    Raises:
        NoConvergenceError: If no sign change can be bracketed
    """
    target = math.sqrt(length * length - rise * rise)

    low, high = BRACKET_LOW, BRACKET_HIGH
    for _ in range(MAX_BRACKET_EXPANSIONS):
        if _span_residual(low, horizontal, target) > 0.0:
            break
        low /= 10.0
    else:
        raise NoConvergenceError(
            "could not bracket catenary scale parameter from below",
            details={"horizontal": horizontal, "rise": rise, "length": length},
        )
    for _ in range(MAX_BRACKET_EXPANSIONS):
        if _span_residual(high, horizontal, target) < 0.0:
            break
        high *= 10.0
    else:
        raise NoConvergenceError(
            "could not bracket catenary scale parameter from above",
            details={"horizontal": horizontal, "rise": rise, "length": length},
        )

    mid = 0.5 * (low + high)
    for _ in range(MAX_BISECTION_ITERATIONS):
        mid = 0.5 * (low + high)
        residual = _span_residual(mid, horizontal, target)
        if abs(residual) <= tol or mid <= low or mid >= high:
            return mid
        if residual > 0.0:
            low = mid
        else:
            high = mid
    return mid


def _offsets(a: float, horizontal: float, rise: float, length: float) -> tuple[float, float]:
    """Plane offsets (x0, z0) placing the curve through both anchors."""
    x0 = horizontal / 2.0 - a * math.atanh(rise / length)
    z0 = -a * math.cosh(x0 / a)
    return x0, z0


def _classify(chord: float, horizontal: float, length: float, tol: float) -> CatenaryKind:
    if length < chord - tol:
        raise InvalidLengthError(
            f"tether length {length} is shorter than chord {chord}",
            length=length,
            chord=chord,
        )
    if horizontal < MIN_HORIZONTAL:
        return CatenaryKind.VERTICAL
    if length <= chord * (1.0 + TAUT_TOLERANCE):
        return CatenaryKind.TAUT
    return CatenaryKind.GENERAL


def solve_catenary(a: Point3, b: Point3, length: float, tol: float = DEFAULT_TOLERANCE) -> Catenary:
    """Solve the cable of ``length`` hanging from ``a`` to ``b``.

    Raises:
        InvalidLengthError: If ``length`` is shorter than the chord
        NoConvergenceError: If the scale parameter cannot be bracketed
    """
    start, end = a.as_array(), b.as_array()
    horizontal, rise, direction = horizontal_frame(start, end)
    chord = math.hypot(horizontal, rise)
    kind = _classify(chord, horizontal, length, tol)
    record_catenary_solve(kind.value)

    param, x0, z0 = math.inf, 0.0, 0.0
    if kind is CatenaryKind.VERTICAL:
        z0 = min(a.z, b.z) - (max(length, abs(rise)) - abs(rise)) / 2.0 - a.z
    elif kind is CatenaryKind.GENERAL:
        param = scale_parameter(horizontal, rise, length, tol)
        x0, z0 = _offsets(param, horizontal, rise, length)

    return Catenary(
        anchor_a=a,
        anchor_b=b,
        length=length,
        param_a=param,
        direction=(float(direction[0]), float(direction[1]), float(direction[2])),
        horizontal=horizontal,
        x0=x0,
        z0=z0,
        kind=kind,
    )


def _require_points(m: int) -> None:
    if m < 2:
        raise ValidationError(f"tether discretization needs m >= 2, got {m}", details={"m": m})


def discretize(c: Catenary, m: int) -> TetherPolyline:
    """Sample ``m`` points at equal plane-coordinate steps, endpoints exact."""
    _require_points(m)
    start, end = c.anchor_a.as_array(), c.anchor_b.as_array()
    if c.is_vertical:
        return vertical_degenerate(c.anchor_a, c.anchor_b, c.length, m)
    if c.is_taut:
        points = np.linspace(start, end, m)
    else:
        s = np.linspace(0.0, c.horizontal, m)
        points = start + s[:, None] * np.asarray(c.direction)
        points[:, 2] += np.asarray(c.height(s))
    points[0], points[-1] = start, end
    return TetherPolyline(points=points)


def vertical_degenerate(a: Point3, b: Point3, length: float, m: int) -> TetherPolyline:
    """Model a near-vertical cable as a doubled vertical line.

    The cable drops from the upper anchor to a low point ``(L - |h|)/2`` below
    the lower anchor and climbs back, sampled uniformly by arc length. A zero
    length cable collapses to a single point.
    """
    _require_points(m)
    start, end = a.as_array(), b.as_array()
    if length <= 0.0:
        return TetherPolyline(points=start[None, :])
    rise = abs(b.z - a.z)
    total = max(length, rise)
    low_z = min(a.z, b.z) - (total - rise) / 2.0
    points = vertical_points(start, end, total, low_z - a.z, np.linspace(0.0, total, m))
    points[0], points[-1] = start, end
    return TetherPolyline(points=points)


def sample_tether(
    anchor: NDArray[np.float64],
    uav: NDArray[np.float64],
    length: float,
    m: int = DEFAULT_POINTS,
    tol: float = DEFAULT_TOLERANCE,
) -> NDArray[np.float64]:
    """Discretize the tether from ``anchor`` to ``uav`` as an (m, 3) array.

    Same branches as ``solve_catenary`` + ``discretize`` without building
    models; used by the planner and optimizer inner loops.
    """
    horizontal, rise, direction = horizontal_frame(anchor, uav)
    chord = math.hypot(horizontal, rise)
    kind = _classify(chord, horizontal, length, tol)
    record_catenary_solve(kind.value)

    if kind is CatenaryKind.VERTICAL:
        if length <= 0.0:
            return anchor[None, :].copy()
        total = max(length, abs(rise))
        low_z = min(anchor[2], uav[2]) - (total - abs(rise)) / 2.0
        points = vertical_points(anchor, uav, total, float(low_z - anchor[2]), np.linspace(0.0, total, m))
    elif kind is CatenaryKind.TAUT:
        points = np.linspace(anchor, uav, m)
    else:
        param = scale_parameter(horizontal, rise, length, tol)
        x0, z0 = _offsets(param, horizontal, rise, length)
        s = np.linspace(0.0, horizontal, m)
        points = anchor + s[:, None] * direction
        points[:, 2] += param * np.cosh((s - x0) / param) + z0
    points[0], points[-1] = anchor, uav
    return points


def tether_polyline(anchor: Point3, uav: Point3, length: float, m: int = DEFAULT_POINTS) -> TetherPolyline:
    """Solve and discretize in one call, picking the right branch."""
    _require_points(m)
    return TetherPolyline(points=sample_tether(anchor.as_array(), uav.as_array(), length, m))
