"""SVG figures of instances.

Figures are illustrations only: exact coordinates are converted to
floating point here and nowhere else.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .geom import Point, rational
from .plf import PLFunction, evaluate

WIDTH = 640
HEIGHT = 480
MARGIN = 24
COLORS = ("#1f77b4", "#d62728", "#2ca02c")


class _Frame:
    def __init__(self, points: Iterable[Point], pad: float = 0.08):
        xs, ys = [], []
        for p in points:
            xs.append(float(p.x))
            ys.append(float(p.y))
        if not xs:
            xs, ys = [0.0], [0.0]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        w, h = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
        self.x0, self.x1 = x0 - pad * w, x1 + pad * w
        self.y0, self.y1 = y0 - pad * h, y1 + pad * h
        self.s = min((WIDTH - 2 * MARGIN) / (self.x1 - self.x0), (HEIGHT - 2 * MARGIN) / (self.y1 - self.y0))

    def __call__(self, p) -> Tuple[float, float]:
        x, y = float(p[0]), float(p[1])
        return MARGIN + (x - self.x0) * self.s, HEIGHT - MARGIN - (y - self.y0) * self.s


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _polyline(frame, pts, color, width, closed=False, dash=None) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (frame(p) for p in pts))
    tag = "polygon" if closed else "polyline"
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<{tag} points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"{extra}/>')


def _dots(frame, pts, color, r=3.5) -> List[str]:
    out = []
    for p in pts:
        x, y = frame(p)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{color}"/>')
    return out


def _document(body: Sequence[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">')
    note = "<!-- coordinates rounded to floating point for display; not exact -->"
    return "\n".join([head, note, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


def _clip_graph(f: PLFunction, lo, hi) -> List[Point]:
    """The graph of ``f`` over [lo, hi]; rays are cut at the window."""
    pts = [Point(lo, evaluate(f, lo))]
    pts += [v for v in f.vertices if lo < v.x < hi]
    pts.append(Point(hi, evaluate(f, hi)))
    return pts


def render_envelope(f1: PLFunction, f2: PLFunction, f0: PLFunction, breakpoints=()) -> str:
    xs = [v.x for f in (f1, f2, f0) for v in f.vertices] + [b.x for b in breakpoints]
    if not xs:
        xs = [-1, 1]
    lo, hi = min(xs), max(xs)
    span = Fraction(max(hi - lo, 1))
    lo, hi = rational(lo - span / 4), rational(hi + span / 4)
    graphs = [_clip_graph(f, lo, hi) for f in (f1, f2, f0)]
    frame = _Frame([p for g in graphs for p in g])
    body = [_polyline(frame, graphs[0], COLORS[0], 1.5), _polyline(frame, graphs[1], COLORS[1], 1.5),
            _polyline(frame, graphs[2], COLORS[2], 3, dash="6,4")]
    body += _dots(frame, breakpoints, "black")
    return _document(body)


def render_polygons(P1, P2, components=(), breakpoints=()) -> str:
    frame = _Frame([v for P in (P1, P2) for v in P.vertices])
    body = [_polyline(frame, P1.vertices, COLORS[0], 1.5, closed=True),
            _polyline(frame, P2.vertices, COLORS[1], 1.5, closed=True)]
    for C in components:
        body.append(_polyline(frame, C.vertices, COLORS[2], 3, closed=True, dash="6,4"))
    body += _dots(frame, breakpoints, "black")
    return _document(body)
