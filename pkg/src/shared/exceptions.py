"""Custom exception classes for tethertraj.

This module defines application-specific exceptions for better error handling
and reporting. The CLI maps the families below to process exit codes.
"""

from typing import Any


class TetherTrajError(Exception):
    """Base exception for all tethertraj errors."""

    def __init__(self, message: str, *, details: dict[str, Any] | None = None) -> None:
        """Initialize exception with message and optional details.

        Args:
            message: Human-readable error message
            details: Additional context (e.g., indices, values, thresholds)
        """
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ConfigurationError(TetherTrajError):
    """Raised when configuration is invalid or missing.

    Example:
        >>> raise ConfigurationError(
        ...     "Unknown override key",
        ...     details={"key": "optimizer.gamma_x"}
        ... )
    """


class ValidationError(TetherTrajError):
    """Raised when data validation fails.

    This includes invalid input data, constraint violations, etc.
    """


class InvariantViolationError(ValidationError):
    """Raised when a trajectory state breaks a structural invariant."""

    def __init__(self, message: str, *, index: int | None = None, field: str | None = None) -> None:
        """Initialize with the offending state index and field."""
        super().__init__(message, details={"index": index, "field": field})
        self.index = index
        self.field = field


# ============================================================================
# Catenary Exceptions
# ============================================================================


class CatenaryError(TetherTrajError):
    """Base class for tether curve failures."""


class InvalidLengthError(CatenaryError):
    """Raised when the tether is shorter than the straight anchor-to-UAV chord."""

    def __init__(self, message: str, *, length: float | None = None, chord: float | None = None) -> None:
        """Initialize with length information."""
        super().__init__(message, details={"length": length, "chord": chord})
        self.length = length
        self.chord = chord


class NoConvergenceError(CatenaryError):
    """Raised when the scale parameter root cannot be bracketed."""


# ============================================================================
# World Exceptions
# ============================================================================


class ParseError(TetherTrajError):
    """Raised when a grid or cloud file cannot be parsed."""

    def __init__(
        self,
        message: str,
        *,
        path: str | None = None,
        line: int | None = None,
        offset: int | None = None,
    ) -> None:
        """Initialize with location information (1-based line, byte offset)."""
        super().__init__(message, details={"path": path, "line": line, "offset": offset})
        self.path = path
        self.line = line
        self.offset = offset


class DimensionMismatchError(ParseError):
    """Raised when a grid header is malformed or disagrees with its payload."""


# ============================================================================
# Planner Exceptions
# ============================================================================


class PlanningError(TetherTrajError):
    """Base class for global planning failures."""


class NoPathError(PlanningError):
    """Raised when the open set is exhausted before the goal is reached."""

    def __init__(self, message: str, *, expansions: int | None = None) -> None:
        """Initialize with search statistics."""
        super().__init__(message, details={"expansions": expansions})
        self.expansions = expansions


class StartInfeasibleError(PlanningError):
    """Raised when the start cell is occupied or its tether is infeasible."""


class GoalInfeasibleError(PlanningError):
    """Raised when the goal cell is occupied or its tether is infeasible."""


class InfeasibleInterpolantError(PlanningError):
    """Raised when an interpolated state fails the tether feasibility check."""

    def __init__(self, message: str, *, segment: int | None = None, position: list[float] | None = None) -> None:
        """Initialize with the failing segment and position."""
        super().__init__(message, details={"segment": segment, "position": position})
        self.segment = segment
        self.position = position


# ============================================================================
# Optimizer Exceptions
# ============================================================================


class OptimizationError(TetherTrajError):
    """Base class for trajectory optimization failures."""


class TooShortError(OptimizationError):
    """Raised when a trajectory has fewer states than the widest factor needs."""

    def __init__(self, message: str, *, states: int | None = None, required: int | None = None) -> None:
        """Initialize with state counts."""
        super().__init__(message, details={"states": states, "required": required})
        self.states = states
        self.required = required


class NumericalFailureError(OptimizationError):
    """Raised when the total cost becomes non-finite."""

    def __init__(self, message: str, *, factor_index: int | None = None, factor_kind: str | None = None) -> None:
        """Initialize with the offending factor."""
        super().__init__(message, details={"factor_index": factor_index, "factor_kind": factor_kind})
        self.factor_index = factor_index
        self.factor_kind = factor_kind
