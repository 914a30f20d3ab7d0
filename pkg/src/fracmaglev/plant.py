"""Continuous-time maglev dynamics with a fixed-step RK4 integrator.

The plant is a steel ball levitated under a coil driven by a current
amplifier.  State is (y, v): ball-coil distance and vertical velocity.
The control input is u = i^2, the squared coil current, which enters the
acceleration as dv/dt = g - phi(y) * u with phi the normalized magnetic
force gain.  phi blows up as the gap Y_inf + y closes, so every evaluation
is guarded by a singularity threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "EPS_SING",
    "SingularityError",
    "PlantParams",
    "PlantState",
    "phi",
    "plant_deriv",
    "rk4_step",
]

# Minimum admissible gap Y_inf + y [m]; at or below this the simulation
# aborts instead of producing near-infinite forces.
EPS_SING = 1e-6


class SingularityError(RuntimeError):
    """Raised when the ball-coil gap closes to the singularity guard."""


@dataclass(frozen=True)
class PlantParams:
    """Physical constants of the levitation plant.

    R and L describe the coil electrically; they are carried for
    provenance but unused by the current-driven dynamics.
    """

    m: float = 0.005      # ball mass [kg]
    g: float = 9.81       # gravitational acceleration [m/s^2]
    Q: float = 0.003      # magnetic force constant
    Y_inf: float = 0.041  # gap offset [m]
    R: float = 22.0       # coil resistance [ohm], unused
    L: float = 0.5        # coil inductance [H], unused

    def __post_init__(self) -> None:
        if not self.m > 0.0:
            raise ValueError(f"ball mass must be positive, got m={self.m}")
        if not self.Q > 0.0:
            raise ValueError(f"force constant must be positive, got Q={self.Q}")
        if not self.Y_inf > 0.0:
            raise ValueError(f"gap offset must be positive, got Y_inf={self.Y_inf}")


@dataclass(frozen=True)
class PlantState:
    """Ball position [m], velocity [m/s] and simulation time [s]."""

    y: float
    v: float
    t: float = 0.0


def phi(y: float, params: PlantParams, physical: bool = False) -> float:
    """Normalized force gain phi(y) = Q / (2 m^2 (Y_inf + y)^2).

    ``physical=True`` drops one factor of the mass (force law read as
    F = Q / (2 (Y_inf + y)^2) instead of carrying its own 1/m); the
    closed loop is identical up to the scale of u either way because the
    controller divides by the same phi.
    """
    gap = params.Y_inf + y
    if gap <= EPS_SING:
        raise SingularityError(
            f"ball-coil gap {gap:.3e} m at or below guard {EPS_SING:.0e} m (y={y:.6e})"
        )
    denom = 2.0 * params.m * gap * gap
    if not physical:
        denom *= params.m
    return params.Q / denom


def plant_deriv(
    state: PlantState, u: float, params: PlantParams, physical: bool = False
) -> tuple[float, float]:
    """Time derivatives (dy, dv) under squared-current input u >= 0."""
    if u < 0.0:
        raise ValueError(f"squared-current input must be nonnegative, got u={u}")
    return state.v, params.g - phi(state.y, params, physical) * u


def rk4_step(
    state: PlantState,
    u: float,
    h: float,
    params: PlantParams,
    physical: bool = False,
) -> PlantState:
    """One classical 4-stage Runge-Kutta step with u held constant.

    Raises :class:`SingularityError` if any internal stage violates the
    gap guard.
    """
    if h <= 0.0 or not math.isfinite(h):
        raise ValueError(f"step size must be positive and finite, got h={h}")
    y, v = state.y, state.v

    k1y, k1v = plant_deriv(state, u, params, physical)
    s2 = PlantState(y + 0.5 * h * k1y, v + 0.5 * h * k1v, state.t)
    k2y, k2v = plant_deriv(s2, u, params, physical)
    s3 = PlantState(y + 0.5 * h * k2y, v + 0.5 * h * k2v, state.t)
    k3y, k3v = plant_deriv(s3, u, params, physical)
    s4 = PlantState(y + h * k3y, v + h * k3v, state.t)
    k4y, k4v = plant_deriv(s4, u, params, physical)

    return PlantState(
        y=y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
        v=v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
        t=state.t + h,
    )
