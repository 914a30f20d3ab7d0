"""Fractional backstepping control law and its error coordinates.

The design is a two-step backstepping on the chain e1 -> e2.  The virtual
control for e2 is nu = -k1*e1; z2 = e2 - nu is the residual the outer step
drives to zero.  The commanded squared current is

    u_raw = ( g - x2d_dot + |z2|*sgn(e1) + k2*z2 + k3*sgn(z2)
              + k4*sgn(z2)*F - nu_dot ) / phi(y)

where F is the running fractional integral of |e1| and nu_dot = -k1*e2.
The k4 term is what distinguishes this law from classical backstepping:
its memory of past position error keeps leaning on the residual long after
the instantaneous error has collapsed.  Setting k4 = 0 recovers the
classical (memoryless) law.

u = i^2 cannot be negative on hardware, so the raw command is clamped at
zero; the pre-clamp value is kept so clamp activity stays observable.
Diagnostics V1 = |e1| and V2 = |e1| + |z2| are the scalar envelopes whose
decay indicates the loop is contracting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fraccalc import FracOrder
from .reference import ReferenceSample
from .plant import PlantState

__all__ = [
    "ControllerGains",
    "ErrorState",
    "ControlOutput",
    "compute_errors",
    "sgn",
    "control_law",
    "lyapunov_diagnostics",
]


@dataclass(frozen=True)
class ControllerGains:
    """Backstepping gains and the fractional-memory order.

    k1..k3 must be strictly positive.  k4 scales the fractional-memory
    term and may be exactly 0 to run the classical memoryless baseline.
    """

    k1: float
    k2: float
    k3: float
    k4: float
    alpha: FracOrder

    def __post_init__(self) -> None:
        for name in ("k1", "k2", "k3"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"gain {name} must be strictly positive, got {getattr(self, name)}")
        if self.k4 < 0.0:
            raise ValueError(f"gain k4 must be >= 0, got {self.k4}")


@dataclass(frozen=True)
class ErrorState:
    """Tracking errors and backstepping coordinates.

    nu = -k1*e1 is the virtual control (desired e2); z2 = e2 - nu.
    """

    e1: float  # position error [m]
    e2: float  # velocity error [m/s]
    nu: float  # virtual control [m/s]
    z2: float  # backstepping residual [m/s]


@dataclass(frozen=True)
class ControlOutput:
    """Applied command plus the diagnostics logged with it."""

    u: float         # applied squared current [A^2], >= 0
    i: float         # coil current [A], sqrt(u)
    u_raw: float     # pre-clamp command
    frac_val: float  # fractional integral of |e1| used in the law
    V1: float        # |e1|
    V2: float        # |e1| + |z2|


def compute_errors(
    state: PlantState, ref: ReferenceSample, gains: ControllerGains
) -> ErrorState:
    """Error coordinates of the current state against the reference."""
    e1 = state.y - ref.x1d
    e2 = state.v - ref.x2d
    nu = -gains.k1 * e1
    return ErrorState(e1=e1, e2=e2, nu=nu, z2=e2 - nu)


def sgn(x: float) -> float:
    """Sign of x in {-1.0, 0.0, +1.0}; exactly zero at x = 0, no dead-zone."""
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0


def lyapunov_diagnostics(err: ErrorState) -> tuple[float, float]:
    """Scalar envelopes V1 = |e1| and V2 = |e1| + |z2|."""
    v1 = abs(err.e1)
    return v1, v1 + abs(err.z2)


def control_law(
    err: ErrorState,
    ref: ReferenceSample,
    frac_val: float,
    phi_val: float,
    gains: ControllerGains,
    g: float,
) -> ControlOutput:
    """Evaluate the backstepping law and clamp it to a realizable command.

    ``frac_val`` is the current fractional integral of |e1| (necessarily
    >= 0 since |e1| >= 0); ``phi_val`` is the force gain at the measured
    position.
    """
    if not phi_val > 0.0:
        raise ValueError(f"force gain must be strictly positive, got phi={phi_val}")
    if frac_val < 0.0:
        raise ValueError(f"fractional integral of |e1| cannot be negative, got {frac_val}")
    nu_dot = -gains.k1 * err.e2
    u_raw = (
        g
        - ref.x2d_dot
        + abs(err.z2) * sgn(err.e1)
        + gains.k2 * err.z2
        + gains.k3 * sgn(err.z2)
        + gains.k4 * sgn(err.z2) * frac_val
        - nu_dot
    ) / phi_val
    u = u_raw if u_raw > 0.0 else 0.0
    v1, v2 = lyapunov_diagnostics(err)
    return ControlOutput(u=u, i=math.sqrt(u), u_raw=u_raw, frac_val=frac_val, V1=v1, V2=v2)
