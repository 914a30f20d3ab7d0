"""Minimal standalone SVG line plots of log channels.

One polyline of (t, channel) on linear axes auto-scaled to the data with
5% margins.  Kept dependency-free and geometrically predictable so tests
can invert the pixel mapping; the richer report figures live in
:mod:`fracmaglev.figures`.
"""

from __future__ import annotations

from .simloop import LOG_COLUMNS, SimLog

__all__ = ["MARGINS", "data_window", "render_svg"]

# Pixel margins around the plot box: (left, right, top, bottom).
MARGINS = (64.0, 16.0, 16.0, 44.0)
_N_TICKS = 5


def data_window(lo: float, hi: float) -> tuple[float, float]:
    """Axis window for a data extent: 5% padding each side.

    A zero extent (constant channel) expands to +/- 1 unit around the
    value, which puts the polyline at mid-height.
    """
    if hi == lo:
        return lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _ticks(lo: float, hi: float) -> list[float]:
    step = (hi - lo) / (_N_TICKS - 1)
    return [lo + k * step for k in range(_N_TICKS)]


def render_svg(log: SimLog, channel: str, size: tuple[int, int] = (640, 480)) -> str:
    """Render one log channel against time as a standalone SVG document."""
    if channel == "t" or channel not in LOG_COLUMNS:
        raise ValueError(f"unknown channel {channel!r}; expected one of {LOG_COLUMNS[1:]}")
    t = log.channels["t"]
    vals = log.channels[channel]
    if t.size == 0:
        raise ValueError("cannot render an empty log")

    width, height = float(size[0]), float(size[1])
    left, right, top, bottom = MARGINS
    plot_w = width - left - right
    plot_h = height - top - bottom
    x0, x1 = data_window(float(t.min()), float(t.max()))
    y0, y1 = data_window(float(vals.min()), float(vals.max()))

    def px(x: float) -> float:
        return left + (x - x0) / (x1 - x0) * plot_w

    def py(y: float) -> float:
        return top + (y1 - y) / (y1 - y0) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size[0]}" height="{size[1]}" '
        f'viewBox="0 0 {size[0]} {size[1]}">',
        f'<rect x="0" y="0" width="{size[0]}" height="{size[1]}" fill="white"/>',
        f'<rect x="{left:.2f}" y="{top:.2f}" width="{plot_w:.2f}" height="{plot_h:.2f}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    for xt in _ticks(x0, x1):
        x = px(xt)
        parts.append(
            f'<line x1="{x:.2f}" y1="{top + plot_h:.2f}" x2="{x:.2f}" '
            f'y2="{top + plot_h + 5:.2f}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{top + plot_h + 18:.2f}" font-size="11" '
            f'text-anchor="middle" font-family="sans-serif">{xt:.4g}</text>'
        )
    for yt in _ticks(y0, y1):
        y = py(yt)
        parts.append(
            f'<line x1="{left - 5:.2f}" y1="{y:.2f}" x2="{left:.2f}" y2="{y:.2f}" '
            'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{left - 8:.2f}" y="{y + 4:.2f}" font-size="11" '
            f'text-anchor="end" font-family="sans-serif">{yt:.4g}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 8:.2f}" font-size="12" '
        'text-anchor="middle" font-family="sans-serif">t [s]</text>'
    )
    parts.append(
        f'<text x="14" y="{top + plot_h / 2:.2f}" font-size="12" text-anchor="middle" '
        f'font-family="sans-serif" transform="rotate(-90 14 {top + plot_h / 2:.2f})">'
        f'{channel}</text>'
    )
    points = " ".join(f"{px(float(x)):.2f},{py(float(y)):.2f}" for x, y in zip(t, vals))
    parts.append(
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.2" points="{points}"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
