"""Built-in analytic checks of the fractional-calculus kernel.

Each check compares a kernel computation against a closed form that is
independent of the kernel's own code path (power-rule identities, the
gamma recurrence, the classical alpha = 1 limit).  The CLI prints one
pass/fail line per check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fraccalc import FracAccumulator, FracOrder, caputo_l1, frac_integral_batch, gamma

__all__ = ["CheckResult", "run_selftest"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _integral_endpoint_error(alpha: float, h: float, t_end: float, ramp: bool) -> float:
    """Relative endpoint error of the quadrature against the power rule."""
    n = round(t_end / h)
    t = np.arange(n + 1) * h
    f = t if ramp else np.ones_like(t)
    got = frac_integral_batch(f, FracOrder(alpha), h)[-1]
    if ramp:
        exact = t_end ** (1.0 + alpha) / math.gamma(2.0 + alpha)
    else:
        exact = t_end**alpha / math.gamma(1.0 + alpha)
    return abs(got - exact) / abs(exact)


def run_selftest() -> list[CheckResult]:
    checks: list[CheckResult] = []

    def add(name: str, passed: bool, detail: str) -> None:
        checks.append(CheckResult(name, passed, detail))

    err = abs(gamma(5.0) - 24.0) / 24.0
    add("gamma(5) = 24", err <= 1e-12, f"rel_err={err:.2e}")

    err = abs(gamma(0.5) - math.sqrt(math.pi)) / math.sqrt(math.pi)
    add("gamma(1/2) = sqrt(pi)", err <= 1e-12, f"rel_err={err:.2e}")

    xs = np.linspace(0.1, 20.0, 200)
    worst = max(abs(gamma(x + 1.0) - x * gamma(x)) / gamma(x + 1.0) for x in xs)
    add("gamma recurrence on [0.1, 20]", worst <= 1e-10, f"max_rel={worst:.2e}")

    for alpha in (0.01, 0.5, 0.7):
        err = _integral_endpoint_error(alpha, 1e-3, 1.0, ramp=False)
        add(f"I^a of 1 vs power rule, a={alpha}", err <= 1e-2, f"rel_err={err:.2e}")
        err = _integral_endpoint_error(alpha, 1e-3, 1.0, ramp=True)
        add(f"I^a of t vs power rule, a={alpha}", err <= 1e-2, f"rel_err={err:.2e}")

    e_h = _integral_endpoint_error(0.5, 1e-3, 1.0, ramp=True)
    e_h2 = _integral_endpoint_error(0.5, 5e-4, 1.0, ramp=True)
    ratio = e_h / e_h2
    add("halving h improves I^a of t", ratio >= 1.5, f"ratio={ratio:.2f}")

    n = 1000
    d = caputo_l1(np.full(n, 3.7), FracOrder(0.5), 1e-3)
    worst = float(np.max(np.abs(d)))
    add("Caputo L1 of a constant is 0", worst <= 1e-12, f"max_abs={worst:.2e}")

    t = np.arange(n + 1) * 1e-3
    got = caputo_l1(t, FracOrder(0.5), 1e-3)[-1]
    exact = t[-1] ** 0.5 / math.gamma(1.5)
    err = abs(got - exact) / exact
    add("Caputo L1 of t vs power rule", err <= 1e-2, f"rel_err={err:.2e}")

    rng = np.random.default_rng(7)
    samples = rng.uniform(0.0, 1.0, 300)
    acc = FracAccumulator(FracOrder(0.7), 1e-3)
    streamed = np.array([acc.push(s) for s in samples])
    batch = frac_integral_batch(samples, FracOrder(0.7), 1e-3)
    worst = float(np.max(np.abs(streamed - batch)))
    add("streaming matches batch", worst <= 1e-12, f"max_abs={worst:.2e}")

    f = rng.uniform(-1.0, 1.0, 400)
    got_arr = frac_integral_batch(f, FracOrder(1.0), 1e-3)
    classical = 1e-3 * np.cumsum(f)
    worst = float(np.max(np.abs(got_arr - classical)))
    add("alpha = 1 is the rectangle rule", worst <= 1e-12, f"max_abs={worst:.2e}")

    return checks
