"""Deterministic SVG pictures of leaf systems in the unit disk."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .angles import format_angle
from .lamination import Chord, LeafSystem

STYLES = ("hyperbolic-arc", "straight-chord")

HEADER = ('<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
          '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
          'width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n')


@dataclass(frozen=True)
class RenderSpec:
    size: int = 512
    geodesic_style: str = "hyperbolic-arc"
    labels: bool = False
    highlight: frozenset = field(default_factory=frozenset)
    shade_polygons: bool = True

    def __post_init__(self):
        if self.size < 64:
            raise ValueError("size must be at least 64 pixels")
        if self.geodesic_style not in STYLES:
            raise ValueError(f"geodesic_style must be one of {STYLES}")
        object.__setattr__(self, "highlight", frozenset(self.highlight))


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


class _Canvas:
    def __init__(self, size: int):
        self.c = size / 2
        self.R = 0.45 * size

    def point(self, t: Fraction) -> tuple[float, float]:
        a = 2 * math.pi * float(t)
        return (self.c + self.R * math.cos(a), self.c - self.R * math.sin(a))

    def geodesic(self, a: Fraction, b: Fraction, style: str, move: bool = True) -> str:
        """Path segment from the point of angle a to that of angle b."""
        x1, y1 = self.point(a)
        x2, y2 = self.point(b)
        head = f"M {_fmt(x1)} {_fmt(y1)} " if move else ""
        span = (b - a) % 1
        short = min(span, 1 - span)
        if style == "straight-chord" or short == Fraction(1, 2):
            return head + f"L {_fmt(x2)} {_fmt(y2)}"
        delta = math.pi * float(short)
        radius = self.R * math.tan(delta)
        # the arc bulges toward the circle centre; sweep follows the turn P1 -> M -> P2
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        towards = (self.c - mx, self.c - my)
        depth = self.R / math.cos(delta) - radius
        norm = math.hypot(*towards) or 1.0
        px = self.c + (mx - self.c) / norm * depth if norm else mx
        py = self.c + (my - self.c) / norm * depth if norm else my
        cross = (px - x1) * (y2 - py) - (py - y1) * (x2 - px)
        sweep = 1 if cross > 0 else 0
        return head + f"A {_fmt(radius)} {_fmt(radius)} 0 0 {sweep} {_fmt(x2)} {_fmt(y2)}"


def render_svg(L: LeafSystem, spec: RenderSpec | None = None) -> str:
    """SVG text for L: unit circle, leaves as geodesics, shaded polygon classes."""
    spec = spec or RenderSpec()
    leaves = L.leaves
    for c in spec.highlight:
        if not isinstance(c, Chord) or c not in leaves:
            raise ValueError(f"highlighted chord {c} is not a leaf of the system")
    cv = _Canvas(spec.size)
    out = [HEADER.format(size=spec.size)]
    out.append(f'<rect width="{spec.size}" height="{spec.size}" fill="white"/>\n')
    out.append(f'<circle cx="{_fmt(cv.c)}" cy="{_fmt(cv.c)}" r="{_fmt(cv.R)}" '
               'fill="none" stroke="black" stroke-width="1.5"/>\n')
    if spec.shade_polygons:
        for cls in L.classes:
            if len(cls) < 3:
                continue
            vs = cls.vertices
            parts = [cv.geodesic(vs[0], vs[1], spec.geodesic_style)]
            for a, b in zip(vs[1:], vs[2:] + vs[:1]):
                parts.append(cv.geodesic(a, b, spec.geodesic_style, move=False))
            out.append(f'<path class="poly" d="{" ".join(parts)} Z" fill="#c8d7f0" stroke="none"/>\n')
    for e in sorted(leaves):
        hl = e in spec.highlight
        color, width = ("#d62728", "2") if hl else ("#1f3a93", "1")
        out.append(f'<path class="leaf" d="{cv.geodesic(e.a, e.b, spec.geodesic_style)}" '
                   f'fill="none" stroke="{color}" stroke-width="{width}"/>\n')
    if spec.labels:
        for v in sorted(L.vertices):
            a = 2 * math.pi * float(v)
            x = cv.c + (cv.R + 14) * math.cos(a)
            y = cv.c - (cv.R + 14) * math.sin(a)
            out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="10" '
                       f'text-anchor="middle" dominant-baseline="middle">{format_angle(v)}</text>\n')
    out.append("</svg>\n")
    return "".join(out)
