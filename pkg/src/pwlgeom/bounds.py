"""Closed-form vertex bounds for envelopes, unions and intersections."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple


class InvalidCensus(ValueError):
    pass


class Branch(Enum):
    FIRST_MIN = "first"
    SECOND_MIN = "second"
    TIE = "tie"


class BoundKind(Enum):
    ENVELOPE = "envelope"
    UNION = "union"
    INTERSECTION = "intersection"


@dataclass(frozen=True)
class BoundReport:
    """A vertex bound for one census profile.

    ``secondary_bound`` caps the convex count of an envelope or union, or the
    concave count of an intersection component.  ``params`` holds the
    profile after the silent relabeling that puts the smaller census first.
    """

    kind: BoundKind
    n_bound: int
    secondary_bound: int
    which_branch: Branch
    params: Tuple[int, int, int, int]


def _branch(a: int, b: int) -> Branch:
    if a < b:
        return Branch.FIRST_MIN
    if b < a:
        return Branch.SECOND_MIN
    return Branch.TIE


def envelope_bound(n1: int, c1: int, n2: int, c2: int) -> BoundReport:
    """Vertex bound for the lower envelope of two functions with ``n_i``
    vertices of which ``c_i`` are convex."""
    for n, c in ((n1, c1), (n2, c2)):
        if not 0 <= c <= n:
            raise InvalidCensus(f"need 0 <= c <= n, got n={n}, c={c}")
    if c1 > c2:
        n1, c1, n2, c2 = n2, c2, n1, c1
    first = 2 * c1 + n2 - c2 + 1
    second = c1 + c2
    return BoundReport(BoundKind.ENVELOPE, n1 + n2 + 1 + min(first, second), c1 + c2,
                       _branch(first, second), (n1, c1, n2, c2))


def union_bound(n1: int, c1: int, n2: int, c2: int) -> BoundReport:
    for n, c in ((n1, c1), (n2, c2)):
        if not 3 <= c <= n:
            raise InvalidCensus(f"need 3 <= c <= n for a polygon, got n={n}, c={c}")
    if c1 > c2:
        n1, c1, n2, c2 = n2, c2, n1, c1
    first = 2 * c1 + n2 - c2
    second = c1 + c2
    return BoundReport(BoundKind.UNION, n1 + n2 + min(first, second), c1 + c2,
                       _branch(first, second), (n1, c1, n2, c2))


def intersection_bound(n1: int, r1: int, n2: int, r2: int) -> BoundReport:
    """Vertex bound for one component of the intersection, in terms of the
    concave counts ``r_i``."""
    for n, r in ((n1, r1), (n2, r2)):
        if not 0 <= r <= n - 3:
            raise InvalidCensus(f"need 0 <= r <= n - 3, got n={n}, r={r}")
    if r1 > r2:
        n1, r1, n2, r2 = n2, r2, n1, r1
    first = 2 * r1 + n2 - r2
    second = r1 + r2
    return BoundReport(BoundKind.INTERSECTION, n1 + n2 + min(first, second), r1 + r2,
                       _branch(first, second), (n1, r1, n2, r2))


def envelope_bound_free(n1: int, n2: int) -> int:
    if n1 < 0 or n2 < 0:
        raise InvalidCensus("vertex counts must be non-negative")
    return 2 * n1 + 2 * n2 + 1 - abs(n2 - n1) // 2


def union_bound_free(n1: int, n2: int) -> int:
    """Largest union bound over all convex counts, by exhaustive search."""
    return grid_maximize(BoundKind.UNION, n1, n2).max_value


def union_bound_free_floor(n1: int, n2: int) -> int:
    return 2 * n1 + 2 * n2 - abs(n2 - n1) // 2


def union_bound_free_ceil(n1: int, n2: int) -> int:
    return 2 * n1 + 2 * n2 - (abs(n2 - n1) + 1) // 2


def intersection_bound_free(n1: int, n2: int) -> int:
    if n1 < 3 or n2 < 3:
        raise InvalidCensus("polygons have at least 3 vertices")
    return 2 * n1 + 2 * n2 - 6 - max(abs(n1 - n2) // 2 - 1, 0)


@dataclass(frozen=True)
class GridMaximum:
    kind: BoundKind
    n1: int
    n2: int
    max_value: int
    argmax: List[Tuple[int, int]] = field(default_factory=list)


_GRID = {
    BoundKind.ENVELOPE: (envelope_bound, lambda n: range(0, n + 1)),
    BoundKind.UNION: (union_bound, lambda n: range(3, n + 1)),
    BoundKind.INTERSECTION: (intersection_bound, lambda n: range(0, n - 2)),
}


def grid_maximize(kind, n1: int, n2: int) -> GridMaximum:
    """Maximize the vertex bound of ``kind`` over every admissible census.

    The grid runs over convex counts for envelopes and unions and over
    concave counts for intersections.
    """
    kind = BoundKind(kind)
    bound, admissible = _GRID[kind]
    if kind is not BoundKind.ENVELOPE and (n1 < 3 or n2 < 3):
        raise InvalidCensus("polygons have at least 3 vertices")
    if n1 < 0 or n2 < 0:
        raise InvalidCensus("vertex counts must be non-negative")
    best = None
    argmax = []
    for a in admissible(n1):
        for b in admissible(n2):
            value = bound(n1, a, n2, b).n_bound
            if best is None or value > best:
                best, argmax = value, [(a, b)]
            elif value == best:
                argmax.append((a, b))
    return GridMaximum(kind, n1, n2, best, argmax)


@dataclass(frozen=True)
class UnionFreeReport:
    n1: int
    n2: int
    grid_value: int
    floor_form: int
    ceil_form: int

    @property
    def matches(self) -> str:
        if self.floor_form == self.ceil_form == self.grid_value:
            return "both"
        if self.grid_value == self.ceil_form:
            return "ceil"
        if self.grid_value == self.floor_form:
            return "floor"
        return "neither"


def union_free_report(n1: int, n2: int) -> UnionFreeReport:
    """Grid maximum of the union bound alongside the floor and ceiling
    closed forms, which differ whenever |n1 - n2| is odd."""
    return UnionFreeReport(n1, n2, union_bound_free(n1, n2),
                           union_bound_free_floor(n1, n2), union_bound_free_ceil(n1, n2))
