"""Deterministic serialization of logs and metrics.

The log CSV uses scientific notation with exactly 16 digits after the
decimal point (17 significant digits), which round-trips every binary64
value bit-exactly.  Two runs of the same config therefore serialize to
byte-identical files.
"""

from __future__ import annotations

import numpy as np

from .simloop import LOG_COLUMNS, Metrics, SimLog

__all__ = ["fmt_float", "write_csv", "read_csv", "metrics_json", "sweep_csv"]


def fmt_float(x: float) -> str:
    """Format a float as lowercase scientific notation, 16 fractional digits."""
    return f"{x:.16e}"


def write_csv(log: SimLog) -> bytes:
    """Serialize a log to CSV bytes (UTF-8, LF line endings)."""
    lines = [",".join(LOG_COLUMNS)]
    columns = [log.channels[name] for name in LOG_COLUMNS]
    for row in zip(*columns):
        lines.append(",".join(fmt_float(v) for v in row))
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_csv(data: bytes) -> dict[str, np.ndarray]:
    """Parse bytes produced by :func:`write_csv` back into channel arrays."""
    text = data.decode("utf-8")
    lines = [ln for ln in text.split("\n") if ln]
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    return {
        name: np.array([float(r[j]) for r in rows])
        for j, name in enumerate(header)
    }


def metrics_json(metrics: Metrics) -> str:
    """Render metrics as JSON with the same 16-digit float formatting."""
    def item(value: float | None) -> str:
        return "null" if value is None else fmt_float(value)

    fields = [
        ("settling_time", metrics.settling_time),
        ("steady_state_error", metrics.steady_state_error),
        ("rms_tracking_error", metrics.rms_tracking_error),
        ("max_abs_i", metrics.max_abs_i),
        ("clamp_active_fraction", metrics.clamp_active_fraction),
    ]
    body = ",\n".join(f'  "{name}": {item(value)}' for name, value in fields)
    return "{\n" + body + "\n}\n"


def sweep_csv(rows) -> bytes:
    """Serialize sweep rows (see :func:`fracmaglev.cli.sweep`) to CSV bytes.

    Aborted rows keep their alpha and status but leave the metric fields
    empty; a missing settling time is likewise an empty field.
    """
    lines = [
        "alpha,settling_time,steady_state_error,rms_tracking_error,"
        "max_abs_i,clamp_active_fraction,status"
    ]
    for row in rows:
        if row.metrics is None:
            vals = [""] * 5
            status = f"abort: {row.abort_reason}".replace(",", ";")
        else:
            m = row.metrics
            vals = [
                "" if m.settling_time is None else fmt_float(m.settling_time),
                fmt_float(m.steady_state_error),
                fmt_float(m.rms_tracking_error),
                fmt_float(m.max_abs_i),
                fmt_float(m.clamp_active_fraction),
            ]
            status = "ok"
        lines.append(",".join([fmt_float(row.alpha), *vals, status]))
    return ("\n".join(lines) + "\n").encode("utf-8")
