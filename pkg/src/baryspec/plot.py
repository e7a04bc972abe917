"""Minimal deterministic SVG line plots (no raster backend, no timestamps)."""

from __future__ import annotations

from html import escape
from typing import Sequence

import numpy as np

WIDTH, HEIGHT = 800, 600
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 30, 40, 60
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _nice_max(v: float) -> float:
    if v <= 0:
        return 1.0
    mag = 10 ** np.floor(np.log10(v))
    for step in (1, 2, 2.5, 5, 10):
        if step * mag >= v:
            return float(step * mag)
    return float(10 * mag)


def step_points(values: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """Vertices of the right-closed step function through ascending values."""
    v = np.asarray(values, dtype=np.float64)
    n = len(v)
    xs = np.repeat(np.arange(n + 1) / n, 2)[1:-1]
    ys = np.repeat(v, 2)
    return xs, ys


def line_plot(series: Sequence[tuple[str, np.ndarray, np.ndarray]], title: str = "",
              xlabel: str = "x", ylabel: str = "F(x)", comment: str = "") -> str:
    """Render ``(label, xs, ys)`` series on a shared [0,1] x [0,ymax] frame."""
    ymax = _nice_max(max((float(np.max(ys)) for _, _, ys in series if len(ys)), default=1.0))
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + pw * x

    def sy(y):
        return MARGIN_T + ph * (1 - y / ymax)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
    ]
    if comment:
        out.append(f"<!-- {escape(comment.replace('--', '- -'))} -->")
    out.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
    out.append(f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for i in range(6):
        fx = i / 5
        fy = ymax * i / 5
        out.append(f'<line x1="{sx(fx):.2f}" y1="{MARGIN_T + ph}" x2="{sx(fx):.2f}" y2="{MARGIN_T + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(fx):.2f}" y="{MARGIN_T + ph + 20}" font-size="12" text-anchor="middle">{fx:g}</text>')
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{sy(fy):.2f}" x2="{MARGIN_L}" y2="{sy(fy):.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_L - 8}" y="{sy(fy) + 4:.2f}" font-size="12" text-anchor="end">{fy:g}</text>')
    out.append(f'<text x="{MARGIN_L + pw / 2:.1f}" y="{HEIGHT - 15}" font-size="14" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{MARGIN_T + ph / 2:.1f}" font-size="14" text-anchor="middle" '
               f'transform="rotate(-90 18 {MARGIN_T + ph / 2:.1f})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="25" font-size="16" text-anchor="middle">{escape(title)}</text>')
    for i, (label, xs, ys) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = MARGIN_T + 20 + 18 * i
        out.append(f'<line x1="{MARGIN_L + 15}" y1="{ly}" x2="{MARGIN_L + 40}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{MARGIN_L + 46}" y="{ly + 4}" font-size="12">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
