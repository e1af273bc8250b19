"""Optimizer configuration.

Defaults are the published weights and thresholds of the method; the LM
parameters are standard choices.
"""

import math

from pydantic import BaseModel, ConfigDict, Field


class OptConfig(BaseModel):
    """Weights, thresholds and solver parameters for trajectory refinement."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    # Factor weights
    gamma_eq: float = Field(default=0.6, ge=0.0, description="Equidistance weight")
    gamma_o: float = Field(default=0.8, ge=0.0, description="UAV obstacle weight")
    gamma_theta: float = Field(default=0.4, ge=0.0, description="Kinematics (turning) weight")
    gamma_t: float = Field(default=0.005, ge=0.0, description="Time weight")
    gamma_v: float = Field(default=0.06, ge=0.0, description="Velocity weight")
    gamma_a: float = Field(default=1.0, ge=0.0, description="Acceleration weight")
    gamma_l: float = Field(default=0.9, ge=0.0, description="Tether weight")

    # Thresholds
    beta: float = Field(default=4.0, gt=0.0, description="Obstacle cost decay (1/m)")
    rho_o: float = Field(default=1.0, gt=0.0, description="Obstacle activation distance (m)")
    rho_a: float = Field(default=1.0, gt=0.0, description="Safety distance in the obstacle exponent (m)")
    rho_l: float = Field(default=0.2, gt=0.0, description="Tether clearance threshold (m)")
    rho_theta: float = Field(default=math.pi / 6.0, gt=0.0, description="Turning angle bound (rad)")
    rho_v: float = Field(default=2.0, gt=0.0, description="Desired speed (m/s)")

    # Residual shaping
    kinematics_ceiling: float = Field(default=1e3, gt=0.0, description="Cap on the turning residual")
    tether_collision_gain: float = Field(default=1e4, gt=0.0)
    tether_collision_rate: float = Field(default=10.0, gt=0.0)

    # Discretization and bounds
    m: int = Field(default=64, ge=2, description="Tether discretization points")
    l_max: float = Field(default=20.0, gt=0.0, description="Upper clamp on tether length (m)")
    dt_min: float = Field(default=1e-3, gt=0.0, description="Lower clamp on time increments (s)")

    # Levenberg-Marquardt
    max_iterations: int = Field(default=100, ge=1)
    initial_damping: float = Field(default=1e-4, gt=0.0)
    damping_increase: float = Field(default=2.0, gt=1.0)
    damping_decrease: float = Field(default=3.0, gt=1.0)
    max_damping: float = Field(default=1e10, gt=0.0)
    relative_tolerance: float = Field(default=1e-8, gt=0.0, description="Stop below this relative cost decrease")
    step_tolerance: float = Field(default=1e-10, gt=0.0, description="Stop below this step norm")
    fd_step: float = Field(default=1e-6, gt=0.0, description="Central finite-difference step")
