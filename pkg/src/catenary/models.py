"""Tether curve models."""

import math
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from src.core.types import Point3


class CatenaryKind(StrEnum):
    """Which branch of the solver produced a curve."""

    GENERAL = "general"
    TAUT = "taut"
    VERTICAL = "vertical"


class Catenary(BaseModel):
    """A solved hanging cable between ``anchor_a`` and ``anchor_b``.

    The curve lives in the vertical plane through both anchors. With ``s`` the
    horizontal plane coordinate measured from ``anchor_a`` along ``direction``,
    the height above ``anchor_a`` is ``param_a * cosh((s - x0) / param_a) + z0``.

    Taut and vertical curves carry ``param_a = inf``. For vertical curves
    ``z0`` is the low point height relative to ``anchor_a`` and ``point_at``
    takes arc length instead of a plane coordinate.
    """

    model_config = ConfigDict(frozen=True)

    anchor_a: Point3
    anchor_b: Point3
    length: float = Field(..., ge=0.0, description="Cable length (m)")
    param_a: float = Field(..., gt=0.0, description="Catenary scale parameter (m)")
    direction: tuple[float, float, float] = Field(..., description="Horizontal unit vector of the curve plane")
    horizontal: float = Field(..., ge=0.0, description="Horizontal anchor separation d (m)")
    x0: float = 0.0
    z0: float = 0.0
    kind: CatenaryKind = CatenaryKind.GENERAL

    @property
    def is_taut(self) -> bool:
        return self.kind is CatenaryKind.TAUT

    @property
    def is_vertical(self) -> bool:
        return self.kind is CatenaryKind.VERTICAL

    @property
    def rise(self) -> float:
        """Signed height of ``anchor_b`` above ``anchor_a``."""
        return self.anchor_b.z - self.anchor_a.z

    def height(self, s: float | NDArray[np.float64]) -> float | NDArray[np.float64]:
        """Curve height above ``anchor_a`` at plane coordinate(s) ``s`` (general branch)."""
        a = self.param_a
        return a * np.cosh((np.asarray(s) - self.x0) / a) + self.z0

    def point_at(self, s: float) -> NDArray[np.float64]:
        """World point of the curve at plane coordinate ``s``.

        Vertical curves take arc length in ``[0, length]`` instead.
        """
        start = self.anchor_a.as_array()
        end = self.anchor_b.as_array()
        if self.is_vertical:
            return vertical_points(start, end, self.length, self.z0, s)
        if self.is_taut:
            t = s / self.horizontal if self.horizontal > 0.0 else 0.0
            return start + t * (end - start)
        offset = s * np.asarray(self.direction)
        offset[2] += float(self.height(s))
        return start + offset

    def arc_length(self) -> float:
        """Closed-form arc length of the curve between the anchors."""
        if self.is_vertical:
            return self.length
        if self.is_taut:
            return math.dist(self.anchor_a.as_tuple(), self.anchor_b.as_tuple())
        a = self.param_a
        return a * (math.sinh((self.horizontal - self.x0) / a) + math.sinh(self.x0 / a))

    def lowest_point(self) -> Point3:
        """Lowest point of the curve (an anchor when the vertex is outside the span)."""
        if self.is_vertical:
            return Point3.of(self.point_at(-self.z0))
        if self.is_taut or not 0.0 <= self.x0 <= self.horizontal:
            return self.anchor_a if self.anchor_a.z <= self.anchor_b.z else self.anchor_b
        return Point3.of(self.point_at(self.x0))


def vertical_points(
    start: NDArray[np.float64],
    end: NDArray[np.float64],
    length: float,
    low_z: float,
    s: float | NDArray[np.float64],
) -> NDArray[np.float64]:
    """Point(s) at arc length ``s`` along a doubled vertical cable.

    The cable drops from ``start`` to height ``start.z + low_z`` then climbs to
    ``end``; horizontal drift is spread linearly over the arc length.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.float64))
    low = start[2] + low_z
    descent = start[2] - low
    z = np.where(s_arr <= descent, start[2] - s_arr, low + (s_arr - descent))
    frac = s_arr / length if length > 0.0 else np.zeros_like(s_arr)
    xy = start[:2] + frac[:, None] * (end[:2] - start[:2])
    points = np.column_stack([xy, z])
    return points[0] if np.ndim(s) == 0 else points


class TetherPolyline(BaseModel):
    """An ordered discretization of a tether, anchor first, UAV last."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: NDArray[np.float64]

    def __len__(self) -> int:
        return len(self.points)

    def as_points(self) -> list[Point3]:
        return [Point3.of(p) for p in self.points]

    def length(self) -> float:
        """Sum of segment lengths."""
        if len(self.points) < 2:
            return 0.0
        return float(np.linalg.norm(np.diff(self.points, axis=0), axis=1).sum())
