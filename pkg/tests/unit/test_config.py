"""Unit tests for configuration management."""

import math

import pytest
from config.settings import Settings
from pydantic import ValidationError

from src.optimizer.config import OptConfig
from src.planner.config import PlannerConfig
from src.shared.config import load_settings
from src.shared.exceptions import ConfigurationError


class TestSettings:
    """Test suite for Settings configuration class."""

    def test_defaults_without_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a bare environment yields the documented defaults."""
        for name in ("LOG_LEVEL", "TETHER_POINTS", "RECORD_TIMING", "OUTPUT_DIR"):
            monkeypatch.delenv(f"TETHERTRAJ_{name}", raising=False)

        settings = Settings(_env_file=None)

        assert settings.log_level == "INFO"
        assert settings.log_format == "console"
        assert settings.tether_points == 64
        assert settings.output_dir == "./out"
        assert settings.outside_is_obstacle is True
        assert settings.record_timing is True

    def test_settings_load_from_env(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that prefixed environment variables override defaults."""
        monkeypatch.setenv("TETHERTRAJ_TETHER_POINTS", "128")
        monkeypatch.setenv("TETHERTRAJ_RECORD_TIMING", "false")
        monkeypatch.setenv("TETHERTRAJ_LOG_LEVEL", "debug")

        settings = Settings(_env_file=None)

        assert settings.tether_points == 128
        assert settings.record_timing is False
        assert settings.log_level == "DEBUG"

    def test_fixture_settings(self, test_settings: Settings) -> None:
        """Test the session settings used by the suite.

        Args:
            test_settings: Test configuration fixture
        """
        assert test_settings.log_format == "json"
        assert test_settings.record_timing is False

    def test_log_level_validation(self) -> None:
        """Test that log level must be a valid level."""
        with pytest.raises(ValidationError) as exc_info:
            Settings(_env_file=None, log_level="VERBOSE")

        assert any("log_level" in str(error) for error in exc_info.value.errors())

    def test_log_format_validation(self) -> None:
        """Test that only json and console renderers are accepted."""
        assert Settings(_env_file=None, log_format="JSON").log_format == "json"
        with pytest.raises(ValidationError):
            Settings(_env_file=None, log_format="xml")

    def test_tether_points_bounds(self) -> None:
        """Test that a tether needs at least two points."""
        with pytest.raises(ValidationError):
            Settings(_env_file=None, tether_points=1)

    def test_load_settings_names_rejected_variables(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a bad environment surfaces as ConfigurationError naming the variable."""
        monkeypatch.setenv("TETHERTRAJ_TETHER_POINTS", "1")

        with pytest.raises(ConfigurationError) as exc_info:
            load_settings()

        assert exc_info.value.details["variables"] == ["TETHERTRAJ_TETHER_POINTS"]
        assert "TETHERTRAJ_TETHER_POINTS" in exc_info.value.message


class TestAlgorithmConfig:
    """Test suite for planner and optimizer parameter models."""

    def test_optimizer_defaults(self) -> None:
        """Test the default weights and thresholds."""
        cfg = OptConfig()

        assert (cfg.gamma_eq, cfg.gamma_o, cfg.gamma_theta) == (0.6, 0.8, 0.4)
        assert (cfg.gamma_t, cfg.gamma_v, cfg.gamma_a, cfg.gamma_l) == (0.005, 0.06, 1.0, 0.9)
        assert (cfg.beta, cfg.rho_o, cfg.rho_a, cfg.rho_l, cfg.rho_v) == (4.0, 1.0, 1.0, 0.2, 2.0)
        assert cfg.rho_theta == pytest.approx(math.pi / 6.0)
        assert cfg.max_iterations == 100

    def test_planner_defaults(self) -> None:
        """Test the default planner parameters."""
        cfg = PlannerConfig()

        assert cfg.l_max == 20.0
        assert cfg.tether_clearance_min == 0.2
        assert cfg.v_init == 2.0

    def test_unknown_keys_rejected(self) -> None:
        """Test that misspelled parameters are not silently ignored."""
        with pytest.raises(ValidationError):
            OptConfig(gamma_x=1.0)
        with pytest.raises(ValidationError):
            PlannerConfig(lmax=3.0)

    def test_configs_are_frozen(self) -> None:
        """Test that parameter models cannot be mutated after creation."""
        cfg = OptConfig()

        with pytest.raises(ValidationError):
            cfg.beta = 2.0  # type: ignore[misc]

    def test_negative_weight_rejected(self) -> None:
        """Test that factor weights must be non-negative."""
        with pytest.raises(ValidationError):
            OptConfig(gamma_v=-0.1)
