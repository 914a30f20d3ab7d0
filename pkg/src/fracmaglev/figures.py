"""Matplotlib report figures written next to the CSV output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .simloop import SimLog

__all__ = ["save_overview_figure", "save_sweep_figure"]


def save_overview_figure(log: SimLog, path: str) -> None:
    """Three stacked panels: ball position vs reference, velocity, coil current."""
    t = log.channels["t"]
    fig, (ax_y, ax_v, ax_i) = plt.subplots(3, 1, figsize=(8, 8), sharex=True)

    ax_y.plot(t, log.channels["y"], color="#1f77b4", label="y")
    ax_y.plot(t, log.channels["x1d"], color="#2ca02c", linestyle="--", label="reference")
    ax_y.set_ylabel("position [m]")
    ax_y.legend(loc="best", fontsize=9)
    ax_y.grid(alpha=0.3)

    ax_v.plot(t, log.channels["v"], color="#d62728")
    ax_v.set_ylabel("velocity [m/s]")
    ax_v.grid(alpha=0.3)

    ax_i.plot(t, log.channels["i"], color="#9467bd")
    ax_i.set_ylabel("coil current [A]")
    ax_i.set_xlabel("t [s]")
    ax_i.grid(alpha=0.3)

    alpha = log.config.gains.alpha.alpha
    title = f"{log.config.ref.kind} run, alpha = {alpha:g}"
    if not log.completed:
        title += f"  (aborted at t = {log.abort_time:.4f} s)"
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_sweep_figure(rows, path: str) -> None:
    """Settling time and RMS tracking error against the fractional order."""
    ok = [r for r in rows if r.metrics is not None]
    fig, (ax_s, ax_r) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)

    settled = [r for r in ok if r.metrics.settling_time is not None]
    ax_s.plot([r.alpha for r in settled], [r.metrics.settling_time for r in settled],
              "o-", color="#1f77b4")
    ax_s.set_ylabel("settling time [s]")
    ax_s.grid(alpha=0.3)

    ax_r.plot([r.alpha for r in ok], [r.metrics.rms_tracking_error for r in ok],
              "o-", color="#d62728")
    ax_r.set_ylabel("RMS tracking error [m]")
    ax_r.set_xlabel("fractional order alpha")
    ax_r.set_yscale("log")
    ax_r.grid(alpha=0.3)

    fig.suptitle("fractional-order sweep")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
