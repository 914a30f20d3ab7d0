"""Tests for JSON config parsing, validation and round-tripping."""

import json

import pytest

from fracmaglev.config import (
    ConfigError,
    OutputPrefs,
    load_config,
    parse_config,
    serialize_config,
)
from fracmaglev.control import ControllerGains
from fracmaglev.fraccalc import FracOrder
from fracmaglev.plant import PlantParams
from fracmaglev.reference import ReferenceSpec
from fracmaglev.simloop import SimConfig


def doc(**controller):
    """Minimal valid document; alpha defaults to 0.5 unless overridden."""
    controller.setdefault("alpha", 0.5)
    return json.dumps({"controller": controller})


class TestParseConfig:
    def test_alpha_is_required(self):
        with pytest.raises(ConfigError, match="alpha"):
            parse_config("{}")

    def test_defaults_are_the_nominal_setpoint_scenario(self):
        cfg = parse_config(doc(alpha=0.01))
        assert cfg.params == PlantParams(m=0.005, g=9.81, Q=0.003, Y_inf=0.041, R=22.0, L=0.5)
        assert cfg.gains.k1 == 50.0
        assert cfg.gains.k2 == 100.0
        assert cfg.gains.k3 == 0.01
        assert cfg.gains.k4 == 1.0
        assert cfg.gains.alpha == FracOrder(0.01)
        assert cfg.ref == ReferenceSpec("setpoint", 0.02)
        assert (cfg.plant_dt, cfg.ctrl_dt, cfg.t_end) == (1e-4, 1e-3, 3.0)
        assert (cfg.y0, cfg.v0, cfg.memory_window) == (0.0, 0.0, 0)
        assert cfg.physical_phi is False
        assert cfg.i_max is None

    def test_sinusoid_tracking_scenario(self):
        text = json.dumps({
            "controller": {"alpha": 0.7},
            "reference": {"kind": "sinusoid", "offset": 0.02, "amplitude": 0.01, "freq": 1.0},
        })
        cfg = parse_config(text)
        assert cfg.gains.alpha == FracOrder(0.7)
        assert cfg.ref == ReferenceSpec("sinusoid", 0.02, 0.01, 1.0)

    def test_non_integer_rate_ratio_rejected(self):
        text = json.dumps({
            "controller": {"alpha": 0.5},
            "sim": {"ctrl_dt": 1e-3, "plant_dt": 3e-4},
        })
        with pytest.raises(ConfigError, match="integer"):
            parse_config(text)

    def test_bad_alpha_rejected(self):
        with pytest.raises(ConfigError, match="alpha|order"):
            parse_config(doc(alpha=1.5))

    def test_invalid_json_reports_position(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("{not json}")

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError, match="unknown"):
            parse_config('{"controller": {"alpha": 0.5}, "extra": {}}')

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown"):
            parse_config('{"controller": {"alpha": 0.5, "k9": 1.0}}')

    @pytest.mark.parametrize("text,pattern", [
        ('{"plant": {"m": "heavy"}, "controller": {"alpha": 0.5}}', "number"),
        ('{"plant": {"m": true}, "controller": {"alpha": 0.5}}', "number"),
        ('{"controller": {"alpha": 0.5}, "sim": {"memory_window": 2.5}}', "integer"),
        ('{"plant": {"physical_phi": 1}, "controller": {"alpha": 0.5}}', "boolean"),
        ('{"plant": {"m": -1.0}, "controller": {"alpha": 0.5}}', "mass"),
        ('{"controller": {"alpha": 0.5, "k2": 0.0}}', "k2"),
    ])
    def test_type_and_invariant_errors(self, text, pattern):
        with pytest.raises(ConfigError, match=pattern):
            parse_config(text)

    def test_accepts_bytes(self):
        cfg = parse_config(doc(alpha=0.25).encode("utf-8"))
        assert cfg.gains.alpha == FracOrder(0.25)


class TestOutputPrefs:
    def test_defaults(self):
        _, prefs = load_config(doc())
        assert prefs == OutputPrefs()

    def test_explicit_values(self):
        text = json.dumps({
            "controller": {"alpha": 0.5},
            "output": {"channels": ["y", "V2"], "svg_size": [320, 200], "figures": False},
        })
        _, prefs = load_config(text)
        assert prefs == OutputPrefs(channels=("y", "V2"), svg_size=(320, 200), figures=False)

    def test_unknown_channel_rejected(self):
        text = json.dumps({"controller": {"alpha": 0.5}, "output": {"channels": ["zz"]}})
        with pytest.raises(ConfigError, match="channel"):
            load_config(text)

    def test_time_axis_is_not_a_channel(self):
        text = json.dumps({"controller": {"alpha": 0.5}, "output": {"channels": ["t"]}})
        with pytest.raises(ConfigError, match="channel"):
            load_config(text)

    def test_bad_svg_size_rejected(self):
        text = json.dumps({"controller": {"alpha": 0.5}, "output": {"svg_size": [640]}})
        with pytest.raises(ConfigError, match="svg_size"):
            load_config(text)


class TestRoundTrip:
    def roundtrip(self, cfg: SimConfig) -> SimConfig:
        return parse_config(serialize_config(cfg))

    def test_setpoint_config(self):
        cfg = parse_config(doc(alpha=0.01))
        assert self.roundtrip(cfg) == cfg

    def test_sinusoid_with_awkward_floats(self):
        cfg = SimConfig(
            params=PlantParams(m=0.1 + 0.2, Q=1e-7, Y_inf=0.123456789012345),
            gains=ControllerGains(3.7, 11.1, 2.2e-5, 0.0, FracOrder(1.0 / 3.0)),
            ref=ReferenceSpec("sinusoid", 0.02, 0.013, 2.5),
            t_end=1.7,
            plant_dt=5e-5,
            ctrl_dt=5e-4,
            y0=-0.001,
            v0=0.3,
            memory_window=250,
            physical_phi=True,
            i_max=0.75,
        )
        assert self.roundtrip(cfg) == cfg

    def test_echo_includes_output_prefs(self):
        cfg, prefs = load_config(doc())
        text = serialize_config(cfg, OutputPrefs(channels=("y",), figures=False))
        cfg2, prefs2 = load_config(text)
        assert cfg2 == cfg
        assert prefs2.channels == ("y",)
        assert prefs2.figures is False
