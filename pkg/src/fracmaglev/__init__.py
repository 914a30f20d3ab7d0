"""Closed-loop maglev simulation with a fractional-order backstepping controller.

The package splits into a reusable fractional-calculus kernel
(:mod:`fracmaglev.fraccalc`), the levitation plant and controller
(:mod:`fracmaglev.plant`, :mod:`fracmaglev.control`,
:mod:`fracmaglev.reference`), the deterministic multirate simulation loop
(:mod:`fracmaglev.simloop`) and the CLI / serialization layer.
"""

from .control import ControllerGains, ControlOutput, ErrorState, compute_errors, control_law
from .fraccalc import FracAccumulator, FracOrder, caputo_l1, frac_integral_batch, gamma, gl_weights
from .plant import PlantParams, PlantState, SingularityError, phi, plant_deriv, rk4_step
from .reference import ReferenceSample, ReferenceSpec, eval_reference
from .simloop import Metrics, SimConfig, SimLog, compute_metrics, run_simulation

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ControllerGains", "ControlOutput", "ErrorState", "compute_errors", "control_law",
    "FracAccumulator", "FracOrder", "caputo_l1", "frac_integral_batch", "gamma", "gl_weights",
    "PlantParams", "PlantState", "SingularityError", "phi", "plant_deriv", "rk4_step",
    "ReferenceSample", "ReferenceSpec", "eval_reference",
    "Metrics", "SimConfig", "SimLog", "compute_metrics", "run_simulation",
]
