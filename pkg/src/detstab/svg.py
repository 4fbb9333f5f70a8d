"""Hand-emitted SVG reproduction of the stability maps.

No plotting framework: elements are written directly with a fixed layout and
fixed decimal formatting, so byte-identical output for identical inputs is
guaranteed and the figures can be golden-tested.  The figure shows the
critical-activation-energy curve over q/omega, stable grid points as filled
dots, and unvalidated points as crosses.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, TextIO, Union

from .sweep import SweepReport

__all__ = ["emit_figure", "curve_figure"]

_WIDTH, _HEIGHT = 640, 480
_ML, _MR, _MT, _MB = 64, 16, 16, 48


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Canvas:
    def __init__(self, r_max: float, e_max: float):
        self.r_max = r_max
        self.e_max = e_max
        self.parts: list[str] = []

    def x(self, r: float) -> float:
        return _ML + (r / self.r_max) * (_WIDTH - _ML - _MR)

    def y(self, e: float) -> float:
        return _HEIGHT - _MB - (e / self.e_max) * (_HEIGHT - _MT - _MB)

    def add(self, element: str) -> None:
        self.parts.append(element)

    def line(self, x1, y1, x2, y2, stroke="black", width=1.0):
        self.add(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                 f'y2="{_fmt(y2)}" stroke="{stroke}" stroke-width="{_fmt(width)}"/>')

    def text(self, x, y, s, anchor="middle", size=12):
        self.add(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="monospace" '
                 f'font-size="{size}" text-anchor="{anchor}">{s}</text>')

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
                f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">')
        return "\n".join([head, *self.parts, "</svg>"]) + "\n"


def _axes(c: _Canvas) -> None:
    x0, y0 = c.x(0.0), c.y(0.0)
    x1, y1 = c.x(c.r_max), c.y(c.e_max)
    c.line(x0, y0, x1, y0)
    c.line(x0, y0, x0, y1)
    n_ticks = 5
    for k in range(n_ticks + 1):
        r = c.r_max * k / n_ticks
        xx = c.x(r)
        c.line(xx, y0, xx, y0 + 4)
        c.text(xx, y0 + 18, _fmt(r))
        e = c.e_max * k / n_ticks
        yy = c.y(e)
        c.line(x0 - 4, yy, x0, yy)
        c.text(x0 - 8, yy + 4, _fmt(e), anchor="end")
    c.text((x0 + x1) / 2, _HEIGHT - 10, "q/omega")
    c.text(16, (y0 + y1) / 2, "E", anchor="middle")


def _curve_polyline(c: _Canvas, curve: Sequence[tuple[float, float]]) -> None:
    pts = []
    for r, e in curve:
        if not math.isfinite(e):
            continue
        pts.append((r, min(e, c.e_max)))
    if len(pts) < 2:
        return
    coords = " ".join(f"{_fmt(c.x(r))},{_fmt(c.y(e))}" for r, e in pts)
    c.add(f'<polyline points="{coords}" fill="none" stroke="black" '
          'stroke-width="1.5"/>')


def emit_figure(report: SweepReport,
                curve: Sequence[tuple[float, float]] = ()) -> str:
    """SVG text for a sweep report with an optional critical-energy curve.

    Stable points render as filled dots (class ``stable``), unvalidated points
    as crosses (class ``unstable``); an empty report yields axes only.
    Output bytes are a pure function of the inputs.
    """
    e_vals = [p.E for p in report.points] + [e for _, e in curve if math.isfinite(e)]
    e_max = max(e_vals) * 1.05 if e_vals else 10.0
    c = _Canvas(r_max=0.5, e_max=e_max)
    _axes(c)
    _curve_polyline(c, curve)
    for p in report.points:
        if p.satisfied:
            c.add(f'<circle class="stable" cx="{_fmt(c.x(p.r))}" '
                  f'cy="{_fmt(c.y(p.E))}" r="1.6" fill="black"/>')
    for p in report.points:
        if not p.satisfied:
            xx, yy = c.x(p.r), c.y(p.E)
            c.add(f'<g class="unstable" stroke="black" stroke-width="1.2">'
                  f'<line x1="{_fmt(xx - 4)}" y1="{_fmt(yy - 4)}" '
                  f'x2="{_fmt(xx + 4)}" y2="{_fmt(yy + 4)}"/>'
                  f'<line x1="{_fmt(xx - 4)}" y1="{_fmt(yy + 4)}" '
                  f'x2="{_fmt(xx + 4)}" y2="{_fmt(yy - 4)}"/></g>')
    return c.render()


def curve_figure(curve: Sequence[tuple[float, float]],
                 e_cap: Optional[float] = None) -> str:
    """SVG text for a bare critical-activation-energy curve."""
    finite = [e for _, e in curve if math.isfinite(e)]
    if e_cap is None:
        e_cap = min(max(finite), 100.0) * 1.5 if finite else 10.0
    c = _Canvas(r_max=0.5, e_max=e_cap)
    _axes(c)
    _curve_polyline(c, curve)
    return c.render()


def write_svg(text: str, dest: Union[str, TextIO]) -> None:
    own = isinstance(dest, str)
    fh: TextIO = open(dest, "w", encoding="utf-8") if own else dest
    try:
        fh.write(text)
    finally:
        if own:
            fh.close()
