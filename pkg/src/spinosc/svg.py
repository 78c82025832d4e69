"""Small self-contained SVG plotter for scatter and line figures.

Produces deterministic markup (no timestamps, fixed float formatting) so that
identical inputs give byte-identical files.
"""

from __future__ import annotations

import math


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _nice_ticks(lo: float, hi: float, target: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    power = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * power:
            step = mult * power
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


class SvgPlot:
    """Accumulates point/line series and renders a standalone SVG document."""

    def __init__(self, title="", xlabel="", ylabel="", width=720, height=540):
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.width = width
        self.height = height
        self.margin = 64
        self._series = []

    def add_points(self, xs, ys, radius=2.0, color="#1f77b4"):
        self._series.append(("points", [float(x) for x in xs], [float(y) for y in ys], radius, color))

    def add_polyline(self, xs, ys, width=1.5, color="#d62728"):
        self._series.append(("line", [float(x) for x in xs], [float(y) for y in ys], width, color))

    def _bounds(self):
        xs = [x for s in self._series for x in s[1]]
        ys = [y for s in self._series for y in s[2]]
        if not xs:
            return 0.0, 1.0, 0.0, 1.0
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        padx = 0.05 * (x1 - x0 or 1.0)
        pady = 0.05 * (y1 - y0 or 1.0)
        return x0 - padx, x1 + padx, y0 - pady, y1 + pady

    def render(self) -> str:
        x0, x1, y0, y1 = self._bounds()
        m, w, h = self.margin, self.width, self.height

        def px(x):
            return m + (x - x0) / (x1 - x0) * (w - 2 * m)

        def py(y):
            return h - m - (y - y0) / (y1 - y0) * (h - 2 * m)

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}">',
            f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
            f'<rect x="{m}" y="{m}" width="{w - 2 * m}" height="{h - 2 * m}" '
            'fill="none" stroke="#333" stroke-width="1"/>',
        ]
        if self.title:
            parts.append(
                f'<text x="{w / 2}" y="{m / 2}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="15">{self.title}</text>'
            )
        for t in _nice_ticks(x0, x1):
            X = px(t)
            parts.append(f'<line x1="{_fmt(X)}" y1="{h - m}" x2="{_fmt(X)}" y2="{h - m + 5}" stroke="#333"/>')
            parts.append(
                f'<text x="{_fmt(X)}" y="{h - m + 18}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>'
            )
        for t in _nice_ticks(y0, y1):
            Y = py(t)
            parts.append(f'<line x1="{m - 5}" y1="{_fmt(Y)}" x2="{m}" y2="{_fmt(Y)}" stroke="#333"/>')
            parts.append(
                f'<text x="{m - 8}" y="{_fmt(Y + 4)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11">{_fmt(t)}</text>'
            )
        if self.xlabel:
            parts.append(
                f'<text x="{w / 2}" y="{h - 14}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="13">{self.xlabel}</text>'
            )
        if self.ylabel:
            parts.append(
                f'<text x="16" y="{h / 2}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="13" '
                f'transform="rotate(-90 16 {h / 2})">{self.ylabel}</text>'
            )
        for kind, xs, ys, size, color in self._series:
            if kind == "line":
                coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys))
                parts.append(
                    f'<polyline points="{coords}" fill="none" stroke="{color}" '
                    f'stroke-width="{size}"/>'
                )
            else:
                for x, y in zip(xs, ys):
                    parts.append(
                        f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="{size}" '
                        f'fill="{color}"/>'
                    )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"
