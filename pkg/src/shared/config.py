"""Process-wide runtime settings.

``settings`` holds the TETHERTRAJ_* environment read once at import; the CLI
and the scenario runner take their defaults for the world loader, the tether
sampling and the output files from it.
"""

from pydantic import ValidationError

from config.settings import Settings
from src.shared.exceptions import ConfigurationError


def load_settings() -> Settings:
    """Read the TETHERTRAJ_* environment.

    Raises:
        ConfigurationError: naming every rejected variable
    """
    try:
        return Settings()
    except ValidationError as e:
        rejected = sorted({f"TETHERTRAJ_{str(err['loc'][0]).upper()}" for err in e.errors() if err["loc"]})
        raise ConfigurationError(
            f"invalid runtime settings: {', '.join(rejected) or 'environment'}",
            details={"variables": rejected, "error": str(e)},
        ) from e


settings: Settings = load_settings()
