"""Domain types shared by every stage of the pipeline.

All types are frozen pydantic models. Positions are in meters in the world
frame; the ground anchor sits at the origin unless a scenario says otherwise.
"""

from collections.abc import Sequence
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.shared.exceptions import InvariantViolationError

# Slack allowed between a state's tether length and its anchor chord.
LENGTH_TOLERANCE = 1e-6


class Point3(BaseModel):
    """A 3D position in meters."""

    model_config = ConfigDict(frozen=True)

    x: float = Field(..., allow_inf_nan=False, description="X coordinate (m)")
    y: float = Field(..., allow_inf_nan=False, description="Y coordinate (m)")
    z: float = Field(..., allow_inf_nan=False, description="Z coordinate (m)")

    @classmethod
    def of(cls, values: Sequence[float] | ArrayLike) -> "Point3":
        """Build a point from any 3-element sequence or array."""
        x, y, z = (float(v) for v in np.asarray(values, dtype=float).reshape(3))
        return cls(x=x, y=y, z=z)

    def as_array(self) -> NDArray[np.float64]:
        """Return the coordinates as a float64 array of shape (3,)."""
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    def as_tuple(self) -> tuple[float, float, float]:
        """Return the coordinates as a plain tuple."""
        return (self.x, self.y, self.z)


ORIGIN = Point3(x=0.0, y=0.0, z=0.0)


class TrajectoryKind(StrEnum):
    """Provenance of a trajectory."""

    INITIAL = "initial"
    OPTIMIZED = "optimized"


class TrajState(BaseModel):
    """One discretized trajectory state.

    ``dt`` is the time increment from the previous state; the first state of a
    trajectory carries ``dt = 0``.
    """

    model_config = ConfigDict(frozen=True)

    position: Point3
    tether_length: float = Field(..., ge=0.0, allow_inf_nan=False, description="Tether length (m)")
    dt: float = Field(..., ge=0.0, allow_inf_nan=False, description="Time increment (s)")


def check_state(state: TrajState, anchor: Point3, *, index: int = 0, first: bool = False) -> None:
    """Raise ``InvariantViolationError`` if a state breaks its structural invariants.

    Args:
        state: State to check
        anchor: Ground anchor of the trajectory
        index: Position of the state in its trajectory (for the error)
        first: Whether this is the first state (which must have ``dt == 0``)
    """
    if first and state.dt != 0.0:
        raise InvariantViolationError(f"first state must have dt = 0, got {state.dt}", index=index, field="dt")
    if not first and state.dt <= 0.0:
        raise InvariantViolationError(f"state {index} must have dt > 0, got {state.dt}", index=index, field="dt")
    chord = float(np.linalg.norm(state.position.as_array() - anchor.as_array()))
    if state.tether_length < chord - LENGTH_TOLERANCE:
        raise InvariantViolationError(
            f"state {index} tether length {state.tether_length} is shorter than chord {chord}",
            index=index,
            field="tether_length",
        )


class Trajectory(BaseModel):
    """An ordered sequence of states tethered to a fixed anchor."""

    model_config = ConfigDict(frozen=True)

    states: tuple[TrajState, ...]
    anchor: Point3 = ORIGIN
    kind: TrajectoryKind = TrajectoryKind.INITIAL

    @model_validator(mode="after")
    def _check_states(self) -> "Trajectory":
        if len(self.states) < 2:
            raise InvariantViolationError(f"trajectory needs at least 2 states, got {len(self.states)}")
        for i, state in enumerate(self.states):
            check_state(state, self.anchor, index=i, first=i == 0)
        return self

    @classmethod
    def from_arrays(
        cls,
        positions: ArrayLike,
        tether_lengths: ArrayLike,
        dts: ArrayLike,
        *,
        anchor: Point3 = ORIGIN,
        kind: TrajectoryKind = TrajectoryKind.INITIAL,
    ) -> "Trajectory":
        """Assemble a trajectory from per-state arrays.

        Args:
            positions: (n, 3) UAV positions
            tether_lengths: (n,) tether lengths
            dts: (n,) time increments, first entry 0
            anchor: Ground anchor
            kind: Provenance tag
        """
        pos = np.asarray(positions, dtype=float).reshape(-1, 3)
        lengths = np.asarray(tether_lengths, dtype=float).reshape(-1)
        steps = np.asarray(dts, dtype=float).reshape(-1)
        states = tuple(
            TrajState(position=Point3.of(p), tether_length=float(length), dt=float(dt))
            for p, length, dt in zip(pos, lengths, steps, strict=True)
        )
        return cls(states=states, anchor=anchor, kind=kind)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def start(self) -> Point3:
        return self.states[0].position

    @property
    def goal(self) -> Point3:
        return self.states[-1].position

    def positions(self) -> NDArray[np.float64]:
        """Return UAV positions as an (n, 3) array."""
        return np.array([s.position.as_tuple() for s in self.states], dtype=np.float64)

    def tether_lengths(self) -> NDArray[np.float64]:
        return np.array([s.tether_length for s in self.states], dtype=np.float64)

    def dts(self) -> NDArray[np.float64]:
        return np.array([s.dt for s in self.states], dtype=np.float64)

    def times(self) -> NDArray[np.float64]:
        """Cumulative time stamps, starting at 0."""
        return np.cumsum(self.dts())

    def path_length(self) -> float:
        """Sum of straight segment lengths between consecutive positions."""
        return float(np.linalg.norm(np.diff(self.positions(), axis=0), axis=1).sum())

    def duration(self) -> float:
        return float(self.dts().sum())

    def with_kind(self, kind: TrajectoryKind) -> "Trajectory":
        return self.model_copy(update={"kind": kind})
