"""Minimal SVG line charts (no plotting dependency)."""
from __future__ import annotations

from xml.sax.saxutils import escape

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"]

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 64, 120, 36, 52


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def line_chart(series, *, xlabel: str, ylabel: str, title: str = "",
               markers=None, y_range=(0.0, 1.0)) -> str:
    """``series``/``markers``: ordered mapping label -> [(x, y), ...].

    Series are drawn as polylines, markers as small circles in the colour of
    the series with the same position in the mapping.
    """
    markers = markers or {}
    xs = [x for pts in list(series.values()) + list(markers.values()) for x, _ in pts]
    x0, x1 = (min(xs), max(xs)) if xs else (0, 1)
    if x1 == x0:
        x1 = x0 + 1
    y0, y1 = y_range
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(x):
        return LEFT + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return TOP + (1 - (y - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(6):
        yv = y0 + (y1 - y0) * i / 5
        out.append(f'<text x="{LEFT - 6}" y="{_fmt(sy(yv) + 4)}" text-anchor="end">{yv:g}</text>')
    for i in range(6):
        xv = x0 + (x1 - x0) * i / 5
        out.append(f'<text x="{_fmt(sx(xv))}" y="{TOP + ph + 18}" text-anchor="middle">{xv:g}</text>')
    out.append(f'<text x="{LEFT + pw / 2}" y="{HEIGHT - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{TOP + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {TOP + ph / 2})">{escape(ylabel)}</text>'
    )
    if title:
        out.append(f'<text x="{LEFT + pw / 2}" y="22" text-anchor="middle">{escape(title)}</text>')
    for i, (label, pts) in enumerate(series.items()):
        colour = PALETTE[i % len(PALETTE)]
        path = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in pts)
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{path}"/>')
        ly = TOP + 16 * i + 8
        out.append(f'<line x1="{WIDTH - RIGHT + 10}" y1="{ly}" x2="{WIDTH - RIGHT + 30}" y2="{ly}" stroke="{colour}"/>')
        out.append(f'<text x="{WIDTH - RIGHT + 34}" y="{ly + 4}">{escape(str(label))}</text>')
    for i, pts in enumerate(markers.values()):
        colour = PALETTE[i % len(PALETTE)]
        for x, y in pts:
            out.append(f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="2.5" fill="none" stroke="{colour}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
