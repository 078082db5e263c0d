"""Minimal SVG line plots: one polyline, axes, ticks and labels."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 640, 420
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 20, 40, 60


def _ticks(lo, hi, count=5):
    if hi == lo:
        return [lo]
    return list(np.linspace(lo, hi, count))


def _fmt(v):
    return f"{v:.3g}"


def line_plot(xs, ys, *, xlabel="", ylabel="", title="") -> str:
    """Render (xs, ys) as an SVG document string."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.size < 2:
        raise ValueError("need at least two points of matching shape")
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0
    if x1 == x0:
        x0, x1 = x0 - 1.0, x1 + 1.0
    pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x):
        return MARGIN_LEFT + (x - x0) / (x1 - x0) * pw

    def py(y):
        return MARGIN_TOP + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    bottom, right = MARGIN_TOP + ph, MARGIN_LEFT + pw
    out.append(f'<line x1="{MARGIN_LEFT}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>')
    out.append(f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{bottom}" stroke="black"/>')
    for t in _ticks(x0, x1):
        x = px(t)
        out.append(f'<line x1="{x:.2f}" y1="{bottom}" x2="{x:.2f}" y2="{bottom + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{bottom + 18}" text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(y0, y1):
        y = py(t)
        out.append(f'<line x1="{MARGIN_LEFT - 5}" y1="{y:.2f}" x2="{MARGIN_LEFT}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.2f}" text-anchor="end">{_fmt(t)}</text>')
    if y0 < 0 < y1:
        y = py(0.0)
        out.append(f'<line x1="{MARGIN_LEFT}" y1="{y:.2f}" x2="{right}" y2="{y:.2f}" stroke="#bbb" stroke-dasharray="4 3"/>')
    points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    out.append(f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{points}"/>')
    out.append(f'<text x="{MARGIN_LEFT + pw / 2}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="18" y="{MARGIN_TOP + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN_TOP + ph / 2})">{escape(ylabel)}</text>'
    )
    if title:
        out.append(f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
