"""Application settings using Pydantic BaseSettings.

This module defines the Settings class that loads and validates environment variables.
All configuration should be accessed through the settings instance in src.shared.config.
Algorithm parameters (planner and optimizer weights) are not settings: they live on
PlannerConfig / OptConfig and are overridden per scenario.
"""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-level configuration loaded from environment variables.

    Every value has a default, so a bare environment yields a working setup.
    Variables are read with the ``TETHERTRAJ_`` prefix.

    Example:
        >>> from config.settings import Settings
        >>> settings = Settings()
        >>> print(settings.grid_resolution)
        0.1
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="TETHERTRAJ_",
        case_sensitive=False,
        extra="ignore",
    )

    # ========================================================================
    # Logging Configuration
    # ========================================================================
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is one of the standard levels."""
        allowed_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        v_upper = v.upper()
        if v_upper not in allowed_levels:
            raise ValueError(f"log_level must be one of {allowed_levels}, got {v}")
        return v_upper

    log_format: str = Field(
        default="console",
        description="Log format: json or console",
    )

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        """Validate log format is a known renderer."""
        v_lower = v.lower()
        if v_lower not in {"json", "console"}:
            raise ValueError(f"log_format must be 'json' or 'console', got {v}")
        return v_lower

    # ========================================================================
    # World Configuration
    # ========================================================================
    grid_resolution: float = Field(
        default=0.1,
        gt=0.0,
        le=10.0,
        description="Default occupancy grid resolution in meters per cell",
    )

    outside_is_obstacle: bool = Field(
        default=True,
        description="Treat points outside the occupancy grid bounds as occupied",
    )

    # ========================================================================
    # Tether Configuration
    # ========================================================================
    tether_points: int = Field(
        default=64,
        ge=2,
        le=4096,
        description="Number of points used to discretize the tether curve",
    )

    # ========================================================================
    # Output Configuration
    # ========================================================================
    output_dir: str = Field(
        default="./out",
        description="Default directory for scenario outputs",
    )

    write_trace: bool = Field(
        default=True,
        description="Write the per-iteration optimizer trace (trace.csv)",
    )

    record_timing: bool = Field(
        default=True,
        description="Write wall-clock compute times (TCI/TCO); disable for byte-identical reruns",
    )
