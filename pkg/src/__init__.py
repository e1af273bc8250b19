"""tethertraj - trajectory planning for a UAV tethered to a static ground anchor."""

__version__ = "0.1.0"
