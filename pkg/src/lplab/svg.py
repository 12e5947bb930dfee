"""Deterministic SVG output for point sets, covers, bisectors, and circles.

The only place floating point appears in the toolkit: coordinates are
formatted to 12 significant digits for display, never fed back into any
computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .bisector import Bisector, bisector_eval
from .errors import InvalidInput
from .geometry import PointSet


def _fmt(v: float) -> str:
    return f"{v:.12g}"


@dataclass
class Scene:
    points: Optional[PointSet] = None
    h_lines: list[Fraction] = field(default_factory=list)  # y = c
    v_lines: list[Fraction] = field(default_factory=list)  # x = c
    bisectors: list[Bisector] = field(default_factory=list)
    circles: list[tuple[Fraction, Fraction, float]] = field(default_factory=list)
    # circles as (cx, cy, display radius); drawn as Euclidean hints only

    def is_empty(self) -> bool:
        return not (
            (self.points and self.points.n)
            or self.h_lines
            or self.v_lines
            or self.bisectors
            or self.circles
        )


def _bounds(scene: Scene) -> tuple[float, float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    if scene.points:
        xs += [float(p.x) for p in scene.points]
        ys += [float(p.y) for p in scene.points]
    ys += [float(c) for c in scene.h_lines]
    xs += [float(c) for c in scene.v_lines]
    for b in scene.bisectors:
        xs += [float(b.u.x), float(b.v.x)]
        ys += [float(b.u.y), float(b.v.y)]
    for cx, cy, r in scene.circles:
        xs += [float(cx) - r, float(cx) + r]
        ys += [float(cy) - r, float(cy) + r]
    if not xs:
        xs = [0.0, 1.0]
    if not ys:
        ys = [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x0 == x1:
        x0, x1 = x0 - 1, x1 + 1
    if y0 == y1:
        y0, y1 = y0 - 1, y1 + 1
    return x0, x1, y0, y1


def _bisector_polyline(b: Bisector, x0: float, x1: float, samples: int = 64) -> list[tuple[float, float]]:
    pts = []
    if b.kind == "line":
        a, bb, c = (float(v) for v in b.line)
        if bb == 0:
            x = -c / a
            return [(x, -10**6), (x, 10**6)]
        return [(x0, (-c - a * x0) / bb), (x1, (-c - a * x1) / bb)]
    for i in range(samples + 1):
        x = Fraction(x0) + Fraction(i, samples) * (Fraction(x1) - Fraction(x0))
        lo, hi = bisector_eval(b, x, precision=(Fraction(x1) - Fraction(x0)) / 2**16)
        pts.append((float(x), (float(lo) + float(hi)) / 2))
    return pts


def render_svg(scene: Scene, path: str | Path) -> None:
    """Write a deterministic standalone SVG for the scene."""
    if scene.is_empty():
        raise InvalidInput("empty scene")
    x0, x1, y0, y1 = _bounds(scene)
    mx = (x1 - x0) * 0.05
    my = (y1 - y0) * 0.05
    x0, x1 = x0 - mx, x1 + mx
    y0, y1 = y0 - my, y1 + my
    w, h = x1 - x0, y1 - y0
    dot = max(w, h) / 150

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(-y1)} '
        f'{_fmt(w)} {_fmt(h)}" width="640" height="{_fmt(640 * h / w)}">'
    ]
    # Flip the y axis so larger y is up.
    for c in scene.v_lines:
        x = float(c)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(-y1)}" x2="{_fmt(x)}" y2="{_fmt(-y0)}" '
            f'stroke="#888" stroke-width="{_fmt(dot / 3)}"/>'
        )
    for c in scene.h_lines:
        y = float(c)
        parts.append(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(-y)}" x2="{_fmt(x1)}" y2="{_fmt(-y)}" '
            f'stroke="#888" stroke-width="{_fmt(dot / 3)}"/>'
        )
    for cx, cy, r in scene.circles:
        parts.append(
            f'<circle cx="{_fmt(float(cx))}" cy="{_fmt(-float(cy))}" r="{_fmt(r)}" '
            f'fill="none" stroke="#2a7" stroke-width="{_fmt(dot / 3)}"/>'
        )
    for b in scene.bisectors:
        pts = _bisector_polyline(b, x0, x1)
        coords = " ".join(f"{_fmt(px)},{_fmt(-py)}" for px, py in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#c33" '
            f'stroke-width="{_fmt(dot / 3)}"/>'
        )
    if scene.points:
        for p in scene.points:
            parts.append(
                f'<circle cx="{_fmt(float(p.x))}" cy="{_fmt(-float(p.y))}" '
                f'r="{_fmt(dot)}" fill="#135"/>'
            )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
