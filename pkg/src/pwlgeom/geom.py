"""Exact rational scalars, points and the predicates built on them.

Coordinates are kept as ``int`` whenever the value is integral and as
:class:`fractions.Fraction` otherwise.  Both are exact, compare and hash
consistently, and integer-only inputs stay on the fast ``int`` path.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from typing import NamedTuple, Tuple, Union

Scalar = Union[int, Fraction]


def rational(value) -> Scalar:
    """Coerce ``value`` (int, Fraction or ``"p/q"`` string) to an exact scalar."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return rational(Fraction(value.strip()))
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def div(a: Scalar, b: Scalar) -> Scalar:
    """Exact quotient, normalized back to ``int`` when integral."""
    if isinstance(a, int) and isinstance(b, int):
        q = Fraction(a, b)
    else:
        q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def format_rational(value: Scalar) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Point(NamedTuple):
    x: Scalar
    y: Scalar

    def __str__(self) -> str:
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


def point(x, y) -> Point:
    return Point(rational(x), rational(y))


def midpoint(a: Point, b: Point) -> Point:
    return Point(div(a.x + b.x, 2), div(a.y + b.y, 2))


class Owner(IntEnum):
    """Which input owns a piece of an envelope or of a boolean-op boundary."""

    FIRST = 1
    SECOND = 2

    @property
    def other(self) -> "Owner":
        return Owner.SECOND if self is Owner.FIRST else Owner.FIRST


class Orientation(IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


def cross(a: Point, b: Point, c: Point) -> Scalar:
    """The cross product (b - a) x (c - a)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orientation(a: Point, b: Point, c: Point) -> Orientation:
    d = cross(a, b, c)
    if d > 0:
        return Orientation.COUNTERCLOCKWISE
    if d < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True when ``p`` lies on the closed segment ``ab``."""
    if cross(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def signed_area2(points) -> Scalar:
    """Twice the signed area of the closed polygon through ``points``."""
    total = 0
    n = len(points)
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        total += p.x * q.y - q.x * p.y
    return total


class IntersectionKind(Enum):
    EMPTY = "empty"
    POINT = "point"
    OVERLAP = "overlap"


@dataclass(frozen=True)
class SegmentIntersection:
    kind: IntersectionKind
    points: Tuple[Point, ...] = ()

    @property
    def point(self) -> Point:
        if self.kind is not IntersectionKind.POINT:
            raise ValueError(f"no single point in a {self.kind.value} intersection")
        return self.points[0]


_EMPTY = SegmentIntersection(IntersectionKind.EMPTY)

Segment = Tuple[Point, Point]


def segment_intersection(s1: Segment, s2: Segment) -> SegmentIntersection:
    """Classify the intersection of two closed segments exactly.

    An overlap is reported as the shared closed subsegment with its
    endpoints ordered by x, then y.
    """
    a, b = s1
    c, d = s2
    if a == b or c == d:
        raise ValueError("segment endpoints must be distinct")
    if (max(a.x, b.x) < min(c.x, d.x) or max(c.x, d.x) < min(a.x, b.x)
            or max(a.y, b.y) < min(c.y, d.y) or max(c.y, d.y) < min(a.y, b.y)):
        return _EMPTY
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    if d1 == 0 and d2 == 0:
        lo = max(min(a, b), min(c, d))
        hi = min(max(a, b), max(c, d))
        if lo > hi:
            return _EMPTY
        if lo == hi:
            return SegmentIntersection(IntersectionKind.POINT, (lo,))
        return SegmentIntersection(IntersectionKind.OVERLAP, (lo, hi))
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
        return _EMPTY
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
        return _EMPTY
    if d1 == 0:
        return SegmentIntersection(IntersectionKind.POINT, (a,))
    if d2 == 0:
        return SegmentIntersection(IntersectionKind.POINT, (b,))
    if d3 == 0:
        return SegmentIntersection(IntersectionKind.POINT, (c,))
    if d4 == 0:
        return SegmentIntersection(IntersectionKind.POINT, (d,))
    t = div(d1, d1 - d2)
    p = Point(rational(a.x + t * (b.x - a.x)), rational(a.y + t * (b.y - a.y)))
    return SegmentIntersection(IntersectionKind.POINT, (p,))


def line_intersection(a: Point, b: Point, c: Point, d: Point) -> Point:
    """Intersection point of the (non-parallel) lines ``ab`` and ``cd``."""
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    if d1 == d2:
        raise ValueError("lines are parallel")
    t = div(d1, d1 - d2)
    return Point(rational(a.x + t * (b.x - a.x)), rational(a.y + t * (b.y - a.y)))
