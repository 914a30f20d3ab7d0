"""Analytic reference trajectories: position, velocity and acceleration.

Derivatives are exact (differentiated by hand, not finite-differenced) so
the controller's feedforward term sees no numerical noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["ReferenceSpec", "ReferenceSample", "eval_reference"]

_KINDS = ("setpoint", "sinusoid")


@dataclass(frozen=True)
class ReferenceSpec:
    """Reference shape: constant set point or offset sinusoid."""

    kind: str
    offset: float          # [m]
    amplitude: float = 0.0  # [m], sinusoid only
    freq: float = 0.0       # [Hz], sinusoid only

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"reference kind must be one of {_KINDS}, got {self.kind!r}")
        if self.kind == "sinusoid":
            if not self.freq > 0.0:
                raise ValueError(f"sinusoid frequency must be positive, got {self.freq}")
            if self.amplitude < 0.0:
                raise ValueError(f"sinusoid amplitude must be >= 0, got {self.amplitude}")


@dataclass(frozen=True)
class ReferenceSample:
    """Reference position x1d [m], velocity x2d [m/s], acceleration x2d_dot [m/s^2]."""

    x1d: float
    x2d: float
    x2d_dot: float


def eval_reference(spec: ReferenceSpec, t: float) -> ReferenceSample:
    """Evaluate the reference and its first two derivatives at time t >= 0."""
    if t < 0.0:
        raise ValueError(f"reference time must be >= 0, got t={t}")
    if spec.kind == "setpoint":
        return ReferenceSample(spec.offset, 0.0, 0.0)
    w = 2.0 * math.pi * spec.freq
    return ReferenceSample(
        x1d=spec.offset + spec.amplitude * math.sin(w * t),
        x2d=spec.amplitude * w * math.cos(w * t),
        x2d_dot=-spec.amplitude * w * w * math.sin(w * t),
    )
