"""Planner configuration."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.shared.exceptions import ConfigurationError


class PlannerConfig(BaseModel):
    """Parameters of the tether-aware global planner.

    Example:
        >>> cfg = PlannerConfig(l_max=12.0)
        >>> cfg.eps_l
        0.05
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    l_max: float = Field(default=20.0, gt=0.0, description="Maximum tether length (m)")
    eps_l: float = Field(default=0.05, gt=0.0, description="Tether length increment per feasibility step (m)")
    tether_clearance_min: float = Field(default=0.2, gt=0.0, description="Minimum tether-to-obstacle distance (m)")
    interp_spacing: float = Field(default=0.5, gt=0.0, description="Maximum distance between interpolated states (m)")
    v_init: float = Field(default=2.0, gt=0.0, description="Constant speed used to time the initial path (m/s)")
    m: int = Field(default=64, ge=2, description="Tether discretization points")
    max_expansions: int = Field(default=1_000_000, ge=1, description="Search expansion cap before giving up")

    @model_validator(mode="after")
    def _check_increment(self) -> "PlannerConfig":
        if self.eps_l >= self.l_max:
            raise ConfigurationError(
                f"eps_l ({self.eps_l}) must be smaller than l_max ({self.l_max})",
                details={"eps_l": self.eps_l, "l_max": self.l_max},
            )
        return self
