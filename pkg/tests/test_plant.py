"""Tests for the levitation plant and its RK4 integrator."""

import math

import numpy as np
import pytest

from fracmaglev.plant import (
    EPS_SING,
    PlantParams,
    PlantState,
    SingularityError,
    phi,
    plant_deriv,
    rk4_step,
)

NOMINAL = PlantParams()


class TestPlantParams:
    def test_nominal_values(self):
        assert (NOMINAL.m, NOMINAL.g, NOMINAL.Q, NOMINAL.Y_inf) == (0.005, 9.81, 0.003, 0.041)
        assert (NOMINAL.R, NOMINAL.L) == (22.0, 0.5)

    @pytest.mark.parametrize("kwargs", [{"m": 0.0}, {"m": -1.0}, {"Q": 0.0}, {"Y_inf": -0.01}])
    def test_rejects_nonpositive_constants(self, kwargs):
        with pytest.raises(ValueError):
            PlantParams(**kwargs)


class TestPhi:
    def test_nominal_gain_at_setpoint(self):
        """Hand arithmetic: 0.003 / (2 * 0.005^2 * 0.061^2) ~ 1.61249e4."""
        expected = 0.003 / (2.0 * 0.005**2 * 0.061**2)
        assert phi(0.02, NOMINAL) == pytest.approx(expected, rel=1e-12)
        assert phi(0.02, NOMINAL) == pytest.approx(1.61249e4, rel=1e-4)

    def test_proportional_in_q(self):
        doubled = PlantParams(Q=2.0 * NOMINAL.Q)
        assert phi(0.02, doubled) == 2.0 * phi(0.02, NOMINAL)

    def test_singularity_guard(self):
        y_limit = -NOMINAL.Y_inf + EPS_SING
        with pytest.raises(SingularityError):
            phi(y_limit - 1e-9, NOMINAL)
        with pytest.raises(SingularityError):
            phi(-NOMINAL.Y_inf, NOMINAL)
        assert phi(y_limit + 1e-7, NOMINAL) > 0.0

    def test_positive_and_decreasing(self):
        gaps = np.linspace(-0.03, 0.1, 100)
        values = [phi(float(y), NOMINAL) for y in gaps]
        assert all(v > 0.0 for v in values)
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_physical_reading_drops_one_mass_factor(self):
        assert phi(0.02, NOMINAL, physical=True) == pytest.approx(
            phi(0.02, NOMINAL) * NOMINAL.m, rel=1e-15
        )


class TestPlantDeriv:
    def test_free_fall_acceleration_is_exactly_g(self):
        dy, dv = plant_deriv(PlantState(0.01, 0.0), 0.0, NOMINAL)
        assert dv == NOMINAL.g

    def test_velocity_identity(self):
        dy, _ = plant_deriv(PlantState(0.0, 1.5), 0.0, NOMINAL)
        assert dy == 1.5

    def test_equilibrium_input(self):
        """u* = g / phi(y) makes both derivatives vanish."""
        y = 0.02
        u_star = NOMINAL.g / phi(y, NOMINAL)
        dy, dv = plant_deriv(PlantState(y, 0.0), u_star, NOMINAL)
        assert dy == 0.0
        assert abs(dv) <= 1e-12

    def test_rejects_negative_input(self):
        with pytest.raises(ValueError):
            plant_deriv(PlantState(0.02, 0.0), -1e-9, NOMINAL)


class TestRk4Step:
    def test_equilibrium_is_a_fixed_point(self):
        y = 0.02
        u_star = NOMINAL.g / phi(y, NOMINAL)
        state = PlantState(y, 0.0, 0.0)
        nxt = rk4_step(state, u_star, 1e-3, NOMINAL)
        assert abs(nxt.y - y) <= 1e-12
        assert abs(nxt.v) <= 1e-12

    def test_single_free_fall_step_is_exact(self):
        """RK4 reproduces the quadratic free-fall solution to rounding."""
        y0, v0, h = 0.01, -0.3, 1e-3
        nxt = rk4_step(PlantState(y0, v0), 0.0, h, NOMINAL)
        assert nxt.y == pytest.approx(y0 + v0 * h + 0.5 * NOMINAL.g * h * h, abs=1e-12)
        assert nxt.v == pytest.approx(v0 + NOMINAL.g * h, abs=1e-12)

    def test_many_free_fall_steps_track_the_quadratic(self):
        h = 1e-3
        state = PlantState(0.0, 0.05)
        for k in range(1, 101):
            state = rk4_step(state, 0.0, h, NOMINAL)
            t = k * h
            assert state.y == pytest.approx(0.05 * t + 0.5 * NOMINAL.g * t * t, abs=1e-12)

    def test_time_advances_by_h(self):
        nxt = rk4_step(PlantState(0.02, 0.0, t=0.25), 0.0, 1e-3, NOMINAL)
        assert nxt.t == 0.25 + 1e-3

    @pytest.mark.parametrize("h", [0.0, -1e-3])
    def test_rejects_nonpositive_step(self, h):
        with pytest.raises(ValueError):
            rk4_step(PlantState(0.02, 0.0), 0.0, h, NOMINAL)

    def test_stage_singularity_propagates(self):
        # Ball screaming toward the coil: an internal stage crosses the guard.
        state = PlantState(-NOMINAL.Y_inf + 2e-6, -1.0)
        with pytest.raises(SingularityError):
            rk4_step(state, 0.0, 1e-2, NOMINAL)

    def test_deterministic(self):
        state = PlantState(0.013, -0.21)
        a = rk4_step(state, 4.2e-4, 1e-4, NOMINAL)
        b = rk4_step(state, 4.2e-4, 1e-4, NOMINAL)
        assert (a.y, a.v, a.t) == (b.y, b.v, b.t)
