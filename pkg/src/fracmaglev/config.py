"""JSON scenario configuration: parsing, validation, serialization.

A config document has up to five sections: ``plant``, ``controller``,
``reference``, ``sim``, ``output``.  Every key is optional except
``controller.alpha`` (the fractional order is the experiment's variable,
so it carries no default).  Unspecified keys take the nominal desk-scale
scenario defaults.

``serialize_config`` and ``parse_config`` round-trip exactly: floats are
emitted with shortest-repr JSON, which is bit-exact for binary64.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .control import ControllerGains
from .fraccalc import FracOrder
from .plant import PlantParams
from .reference import ReferenceSpec
from .simloop import LOG_COLUMNS, SimConfig

__all__ = ["ConfigError", "OutputPrefs", "parse_config", "load_config", "serialize_config"]


class ConfigError(ValueError):
    """Malformed or invalid configuration document."""


@dataclass(frozen=True)
class OutputPrefs:
    """What the CLI writes besides the log CSV."""

    channels: tuple[str, ...] = ("y", "v", "i", "e1")
    svg_size: tuple[int, int] = (640, 480)
    figures: bool = True


_PLANT_DEFAULTS = {"m": 0.005, "g": 9.81, "Q": 0.003, "Y_inf": 0.041, "R": 22.0, "L": 0.5,
                   "physical_phi": False}
_CONTROLLER_DEFAULTS = {"k1": 50.0, "k2": 100.0, "k3": 0.01, "k4": 1.0, "i_max": None}
_SIM_DEFAULTS = {"t_end": 3.0, "plant_dt": 1e-4, "ctrl_dt": 1e-3, "y0": 0.0, "v0": 0.0,
                 "memory_window": 0}
_REFERENCE_DEFAULTS = {"kind": "setpoint", "offset": 0.02, "amplitude": 0.01, "freq": 1.0}
_SECTIONS = ("plant", "controller", "reference", "sim", "output")


def _section(doc: dict, name: str) -> dict:
    sec = doc.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"section {name!r} must be an object, got {type(sec).__name__}")
    return sec


def _check_keys(sec: dict, name: str, allowed) -> None:
    unknown = set(sec) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in section {name!r}: {sorted(unknown)}")


def _number(sec: dict, section: str, key: str, default=None):
    val = sec.get(key, default)
    if val is None:
        return None
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{section}.{key} must be a number, got {val!r}")
    return float(val)


def _boolean(sec: dict, section: str, key: str, default: bool) -> bool:
    val = sec.get(key, default)
    if not isinstance(val, bool):
        raise ConfigError(f"{section}.{key} must be a boolean, got {val!r}")
    return val


def _integer(sec: dict, section: str, key: str, default: int) -> int:
    val = sec.get(key, default)
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"{section}.{key} must be an integer, got {val!r}")
    return val


def load_config(text: str | bytes) -> tuple[SimConfig, OutputPrefs]:
    """Parse a JSON config document into a scenario plus output preferences."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"config root must be an object, got {type(doc).__name__}")
    _check_keys(doc, "<root>", _SECTIONS)

    plant = _section(doc, "plant")
    _check_keys(plant, "plant", list(_PLANT_DEFAULTS))
    ctrl = _section(doc, "controller")
    _check_keys(ctrl, "controller", list(_CONTROLLER_DEFAULTS) + ["alpha"])
    refsec = _section(doc, "reference")
    _check_keys(refsec, "reference", list(_REFERENCE_DEFAULTS))
    sim = _section(doc, "sim")
    _check_keys(sim, "sim", list(_SIM_DEFAULTS))

    try:
        params = PlantParams(
            m=_number(plant, "plant", "m", _PLANT_DEFAULTS["m"]),
            g=_number(plant, "plant", "g", _PLANT_DEFAULTS["g"]),
            Q=_number(plant, "plant", "Q", _PLANT_DEFAULTS["Q"]),
            Y_inf=_number(plant, "plant", "Y_inf", _PLANT_DEFAULTS["Y_inf"]),
            R=_number(plant, "plant", "R", _PLANT_DEFAULTS["R"]),
            L=_number(plant, "plant", "L", _PLANT_DEFAULTS["L"]),
        )
    except ValueError as exc:
        raise ConfigError(f"plant: {exc}") from None

    if "alpha" not in ctrl:
        raise ConfigError("controller.alpha is required (no default: it selects the scenario)")
    try:
        gains = ControllerGains(
            k1=_number(ctrl, "controller", "k1", _CONTROLLER_DEFAULTS["k1"]),
            k2=_number(ctrl, "controller", "k2", _CONTROLLER_DEFAULTS["k2"]),
            k3=_number(ctrl, "controller", "k3", _CONTROLLER_DEFAULTS["k3"]),
            k4=_number(ctrl, "controller", "k4", _CONTROLLER_DEFAULTS["k4"]),
            alpha=FracOrder(_number(ctrl, "controller", "alpha")),
        )
    except ValueError as exc:
        raise ConfigError(f"controller: {exc}") from None

    kind = refsec.get("kind", _REFERENCE_DEFAULTS["kind"])
    if not isinstance(kind, str):
        raise ConfigError(f"reference.kind must be a string, got {kind!r}")
    try:
        if kind == "setpoint":
            # amplitude/freq are meaningless for a set point and normalize to 0.
            ref = ReferenceSpec(kind="setpoint",
                                offset=_number(refsec, "reference", "offset",
                                               _REFERENCE_DEFAULTS["offset"]))
        else:
            ref = ReferenceSpec(
                kind=kind,
                offset=_number(refsec, "reference", "offset", _REFERENCE_DEFAULTS["offset"]),
                amplitude=_number(refsec, "reference", "amplitude", _REFERENCE_DEFAULTS["amplitude"]),
                freq=_number(refsec, "reference", "freq", _REFERENCE_DEFAULTS["freq"]),
            )
    except ValueError as exc:
        raise ConfigError(f"reference: {exc}") from None

    try:
        config = SimConfig(
            params=params,
            gains=gains,
            ref=ref,
            t_end=_number(sim, "sim", "t_end", _SIM_DEFAULTS["t_end"]),
            plant_dt=_number(sim, "sim", "plant_dt", _SIM_DEFAULTS["plant_dt"]),
            ctrl_dt=_number(sim, "sim", "ctrl_dt", _SIM_DEFAULTS["ctrl_dt"]),
            y0=_number(sim, "sim", "y0", _SIM_DEFAULTS["y0"]),
            v0=_number(sim, "sim", "v0", _SIM_DEFAULTS["v0"]),
            memory_window=_integer(sim, "sim", "memory_window", _SIM_DEFAULTS["memory_window"]),
            physical_phi=_boolean(plant, "plant", "physical_phi", _PLANT_DEFAULTS["physical_phi"]),
            i_max=_number(ctrl, "controller", "i_max", _CONTROLLER_DEFAULTS["i_max"]),
        )
    except ValueError as exc:
        raise ConfigError(f"sim: {exc}") from None

    out = _section(doc, "output")
    _check_keys(out, "output", ["channels", "svg_size", "figures"])
    channels = out.get("channels", list(OutputPrefs.channels))
    if (not isinstance(channels, list)
            or not all(isinstance(c, str) for c in channels)):
        raise ConfigError(f"output.channels must be a list of strings, got {channels!r}")
    for c in channels:
        if c == "t" or c not in LOG_COLUMNS:
            raise ConfigError(f"output.channels: unknown channel {c!r}")
    size = out.get("svg_size", list(OutputPrefs.svg_size))
    if (not isinstance(size, list) or len(size) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) and v > 0 for v in size)):
        raise ConfigError(f"output.svg_size must be [width, height] in pixels, got {size!r}")
    prefs = OutputPrefs(
        channels=tuple(channels),
        svg_size=(size[0], size[1]),
        figures=_boolean(out, "output", "figures", OutputPrefs.figures),
    )
    return config, prefs


def parse_config(text: str | bytes) -> SimConfig:
    """Parse a JSON config document into a scenario."""
    return load_config(text)[0]


def serialize_config(config: SimConfig, prefs: OutputPrefs | None = None) -> str:
    """Render a scenario back to its JSON document (round-trips exactly)."""
    refsec: dict = {"kind": config.ref.kind, "offset": config.ref.offset}
    if config.ref.kind == "sinusoid":
        refsec["amplitude"] = config.ref.amplitude
        refsec["freq"] = config.ref.freq
    doc = {
        "plant": {
            "m": config.params.m,
            "g": config.params.g,
            "Q": config.params.Q,
            "Y_inf": config.params.Y_inf,
            "R": config.params.R,
            "L": config.params.L,
            "physical_phi": config.physical_phi,
        },
        "controller": {
            "k1": config.gains.k1,
            "k2": config.gains.k2,
            "k3": config.gains.k3,
            "k4": config.gains.k4,
            "alpha": config.gains.alpha.alpha,
            "i_max": config.i_max,
        },
        "reference": refsec,
        "sim": {
            "t_end": config.t_end,
            "plant_dt": config.plant_dt,
            "ctrl_dt": config.ctrl_dt,
            "y0": config.y0,
            "v0": config.v0,
            "memory_window": config.memory_window,
        },
    }
    if prefs is not None:
        doc["output"] = {
            "channels": list(prefs.channels),
            "svg_size": list(prefs.svg_size),
            "figures": prefs.figures,
        }
    return json.dumps(doc, indent=2) + "\n"
