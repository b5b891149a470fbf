"""Continuous piecewise-linear functions and their lower/upper envelopes."""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field, replace
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .geom import Owner, Point, Scalar, div, point, rational


class PLFError(ValueError):
    pass


class NonMonotoneX(PLFError):
    pass


class FlatVertex(PLFError):
    pass


class MissingAnchor(PLFError):
    pass


class LemmaViolation(AssertionError):
    """A proof-machinery identity failed; this is an implementation bug."""


class VertexCensus(NamedTuple):
    n: int
    c: int
    r: int


@dataclass(frozen=True)
class PLFunction:
    """A continuous piecewise-linear function R -> R.

    ``vertices`` are the true vertices of the graph in increasing x; the two
    unbounded rays have slopes ``left_slope`` and ``right_slope``.  A function
    without vertices is the line of slope ``left_slope`` through ``anchor``.
    """

    vertices: Tuple[Point, ...]
    left_slope: Scalar
    right_slope: Scalar
    anchor: Optional[Point] = None
    slopes: Tuple[Scalar, ...] = field(init=False, repr=False, compare=False)
    _xs: Tuple[Scalar, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(point(*v) for v in self.vertices)
        left = rational(self.left_slope)
        right = rational(self.right_slope)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "left_slope", left)
        object.__setattr__(self, "right_slope", right)
        if not verts:
            if self.anchor is None:
                raise MissingAnchor("a function without vertices needs an anchor point")
            if left != right:
                raise PLFError("a function without vertices must have equal end slopes")
            object.__setattr__(self, "anchor", point(*self.anchor))
            object.__setattr__(self, "slopes", (left,))
            object.__setattr__(self, "_xs", ())
            return
        object.__setattr__(self, "anchor", None)
        for p, q in zip(verts, verts[1:]):
            if not p.x < q.x:
                raise NonMonotoneX(f"vertex x-coordinates must strictly increase: {p} then {q}")
        slopes = [left]
        for p, q in zip(verts, verts[1:]):
            slopes.append(div(q.y - p.y, q.x - p.x))
        slopes.append(right)
        for i, v in enumerate(verts):
            if slopes[i] == slopes[i + 1]:
                raise FlatVertex(f"{v} is not a vertex: slope {slopes[i]} on both sides")
        object.__setattr__(self, "slopes", tuple(slopes))
        object.__setattr__(self, "_xs", tuple(v.x for v in verts))

    def __call__(self, x) -> Scalar:
        return evaluate(self, x)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def piece_index(self, x) -> int:
        """Index into ``slopes`` of the linear piece containing ``x``.

        At a vertex the piece to the right is returned.
        """
        return bisect.bisect_right(self._xs, x)

    def slope_at(self, x, side: int = 1) -> Scalar:
        """Slope just right of ``x`` (``side=1``) or just left (``side=-1``)."""
        if side > 0:
            return self.slopes[bisect.bisect_right(self._xs, x)]
        return self.slopes[bisect.bisect_left(self._xs, x)]

    def convex_vertices(self) -> List[Point]:
        return [v for i, v in enumerate(self.vertices) if self.slopes[i + 1] > self.slopes[i]]

    def concave_vertices(self) -> List[Point]:
        return [v for i, v in enumerate(self.vertices) if self.slopes[i + 1] < self.slopes[i]]

    def reflect(self) -> "PLFunction":
        """The graph mirrored through y -> -y."""
        anchor = None if self.anchor is None else Point(self.anchor.x, -self.anchor.y)
        return PLFunction(tuple(Point(v.x, -v.y) for v in self.vertices),
                          -self.left_slope, -self.right_slope, anchor)


def plf_new(vertices: Sequence, left_slope, right_slope, anchor=None) -> PLFunction:
    return PLFunction(tuple(vertices), left_slope, right_slope, anchor)


def line(slope, through) -> PLFunction:
    return PLFunction((), slope, slope, through)


def from_points(points: Sequence[Point]) -> PLFunction:
    """The function whose graph is the polyline through ``points`` (sorted by x)
    extended by the two end segments' rays."""
    points = [point(*p) for p in points]
    if len(points) < 2:
        raise PLFError("need at least two points")
    left = div(points[1].y - points[0].y, points[1].x - points[0].x)
    right = div(points[-1].y - points[-2].y, points[-1].x - points[-2].x)
    return PLFunction(tuple(points[1:-1]), left, right, points[0] if len(points) == 2 else None)


def evaluate(f: PLFunction, x) -> Scalar:
    x = rational(x)
    if not f.vertices:
        return rational(f.anchor.y + f.left_slope * (x - f.anchor.x))
    i = bisect.bisect_right(f._xs, x)
    if i == 0:
        v = f.vertices[0]
    else:
        v = f.vertices[i - 1]
    return rational(v.y + f.slopes[i] * (x - v.x))


def census(f: PLFunction) -> VertexCensus:
    c = len(f.convex_vertices())
    return VertexCensus(f.n, c, f.n - c)


@dataclass(frozen=True)
class BreakpointDecomposition:
    """Minimal breakpoint set of an envelope and the censuses of its pieces.

    ``piece_owners[t]`` owns the piece between ``breakpoints[t-1]`` and
    ``breakpoints[t]`` (unbounded at both ends), so there are ``k + 1`` owners.
    The four counts classify the ``k - 1`` bounded pieces by whether the
    owning graph has a convex vertex inside them.
    """

    breakpoints: Tuple[Point, ...]
    piece_owners: Tuple[Owner, ...]
    k1c: Optional[int] = None
    k1r: Optional[int] = None
    k2c: Optional[int] = None
    k2r: Optional[int] = None

    @property
    def k(self) -> int:
        return len(self.breakpoints)

    @property
    def censused(self) -> bool:
        return self.k1c is not None

    @property
    def interior_owners(self) -> Tuple[Owner, ...]:
        return self.piece_owners[1:-1]

    @property
    def counts(self) -> Tuple[int, int, int, int]:
        return (self.k1c, self.k1r, self.k2c, self.k2r)


def _cells(f1: PLFunction, f2: PLFunction):
    """Split the line into open cells where f1 - f2 is linear and sign-constant.

    Returns the sorted node x-coordinates and, for each of the ``len(nodes)+1``
    open cells, the sign of f1 - f2 there.
    """
    nodes = sorted(set(f1._xs) | set(f2._xs))
    extra = []
    if not nodes:
        d0 = evaluate(f1, 0) - evaluate(f2, 0)
        sd = f1.left_slope - f2.left_slope
        if sd != 0:
            extra.append(div(-d0, sd))
        nodes = extra
    else:
        diffs = [evaluate(f1, x) - evaluate(f2, x) for x in nodes]
        first, last = nodes[0], nodes[-1]
        sd = f1.left_slope - f2.left_slope
        if sd != 0:
            xc = first - div(diffs[0], sd)
            if xc < first:
                extra.append(xc)
        sd = f1.right_slope - f2.right_slope
        if sd != 0:
            xc = last - div(diffs[-1], sd)
            if xc > last:
                extra.append(xc)
        for (x0, d0), (x1, d1) in zip(zip(nodes, diffs), zip(nodes[1:], diffs[1:])):
            if (d0 < 0 < d1) or (d1 < 0 < d0):
                extra.append(rational(x0 + div(d0, d0 - d1) * (x1 - x0)))
        nodes = sorted(set(nodes) | set(extra))
    signs = []
    if not nodes:
        d = evaluate(f1, 0) - evaluate(f2, 0)
        signs.append((d > 0) - (d < 0))
        return nodes, signs
    probes = [nodes[0] - 1]
    probes += [div(a + b, 2) for a, b in zip(nodes, nodes[1:])]
    probes.append(nodes[-1] + 1)
    for x in probes:
        d = evaluate(f1, x) - evaluate(f2, x)
        signs.append((d > 0) - (d < 0))
    return nodes, signs


def _owner_of_sign(s: int) -> Optional[Owner]:
    if s < 0:
        return Owner.FIRST
    if s > 0:
        return Owner.SECOND
    return None


def _greedy_breakpoints(nodes, labels):
    """Minimum breakpoint placement over a left-to-right label sequence.

    ``labels[i]`` is the owner of cell ``i`` or ``None`` where both graphs
    coincide.  The current owner is extended as far right as possible; a
    switch happens at the left end of the first cell it cannot cover.
    """
    owner = next((lab for lab in labels if lab is not None), Owner.FIRST)
    owners = [owner]
    switch_nodes = []
    for i, lab in enumerate(labels):
        if lab is not None and lab is not owner:
            switch_nodes.append(nodes[i - 1])
            owner = lab
            owners.append(owner)
    return switch_nodes, owners


def lower_envelope(f1: PLFunction, f2: PLFunction) -> Tuple[PLFunction, BreakpointDecomposition]:
    """Pointwise minimum of ``f1`` and ``f2`` with its minimal breakpoint set."""
    nodes, signs = _cells(f1, f2)
    labels = [_owner_of_sign(s) for s in signs]
    funcs = {Owner.FIRST: f1, Owner.SECOND: f2}
    cell_slopes = []
    for i, lab in enumerate(labels):
        g = funcs[lab or Owner.FIRST]
        if not nodes:
            cell_slopes.append(g.left_slope)
        elif i == 0:
            cell_slopes.append(g.slope_at(nodes[0], -1))
        else:
            cell_slopes.append(g.slope_at(nodes[i - 1], 1))
    values = [min(evaluate(f1, x), evaluate(f2, x)) for x in nodes]
    verts = [Point(x, y) for i, (x, y) in enumerate(zip(nodes, values))
             if cell_slopes[i] != cell_slopes[i + 1]]
    if verts:
        f0 = PLFunction(tuple(verts), cell_slopes[0], cell_slopes[-1])
    else:
        y0 = min(evaluate(f1, 0), evaluate(f2, 0))
        f0 = PLFunction((), cell_slopes[0], cell_slopes[0], Point(0, y0))
    switch_nodes, owners = _greedy_breakpoints(nodes, labels)
    breakpoints = tuple(Point(x, evaluate(f0, x)) for x in switch_nodes)
    decomp = BreakpointDecomposition(breakpoints, tuple(owners))
    return f0, classify_pieces(f1, f2, decomp)


def upper_envelope(f1: PLFunction, f2: PLFunction) -> Tuple[PLFunction, BreakpointDecomposition]:
    """Pointwise maximum, computed as the reflected lower envelope.

    The piece censuses refer to the reflected inputs, i.e. their convex and
    concave roles are interchanged relative to ``f1`` and ``f2``.
    """
    g0, decomp = lower_envelope(f1.reflect(), f2.reflect())
    reflected = tuple(Point(b.x, -b.y) for b in decomp.breakpoints)
    return g0.reflect(), replace(decomp, breakpoints=reflected)


def classify_pieces(f1: PLFunction, f2: PLFunction,
                    decomp: BreakpointDecomposition) -> BreakpointDecomposition:
    """Fill the piece censuses and check the concave-witness property.

    A bounded piece owned by one graph is a c-piece when that graph has a
    convex vertex strictly inside it, an r-piece otherwise.  Every r-piece
    must have a concave vertex of the other graph strictly inside its
    x-interval; a miss raises :class:`LemmaViolation`.
    """
    counts = {(Owner.FIRST, True): 0, (Owner.FIRST, False): 0,
              (Owner.SECOND, True): 0, (Owner.SECOND, False): 0}
    funcs = {Owner.FIRST: f1, Owner.SECOND: f2}
    convex = {o: [v.x for v in funcs[o].convex_vertices()] for o in funcs}
    concave = {o: [v.x for v in funcs[o].concave_vertices()] for o in funcs}
    bps = decomp.breakpoints
    for t in range(1, len(bps)):
        lo, hi = bps[t - 1].x, bps[t].x
        owner = decomp.piece_owners[t]
        has_convex = _any_strictly_between(convex[owner], lo, hi)
        counts[owner, has_convex] += 1
        if not has_convex and not _any_strictly_between(concave[owner.other], lo, hi):
            raise LemmaViolation(
                f"r-piece ({lo}, {hi}) owned by graph {int(owner)} has no concave "
                f"vertex of graph {int(owner.other)} inside")
    return replace(decomp,
                   k1c=counts[Owner.FIRST, True], k1r=counts[Owner.FIRST, False],
                   k2c=counts[Owner.SECOND, True], k2r=counts[Owner.SECOND, False])


def _any_strictly_between(sorted_xs, lo, hi) -> bool:
    i = bisect.bisect_right(sorted_xs, lo)
    return i < len(sorted_xs) and sorted_xs[i] < hi


def piece_in_graph(f0: PLFunction, g: PLFunction, lo, hi) -> bool:
    """Whether ``g`` coincides with ``f0`` on the open interval (lo, hi).

    ``lo``/``hi`` may be ``None`` for an unbounded side.
    """
    xs = sorted(set(f0._xs) | set(g._xs))
    inside = [x for x in xs if (lo is None or x > lo) and (hi is None or x < hi)]
    nodes = []
    nodes.append(lo if lo is not None else (inside[0] if inside else (hi if hi is not None else 0)) - 2)
    nodes.extend(inside)
    nodes.append(hi if hi is not None else (inside[-1] if inside else (lo if lo is not None else 0)) + 2)
    probes = list(nodes)
    probes += [div(a + b, 2) for a, b in zip(nodes, nodes[1:])]
    if lo is None:
        probes.append(nodes[0] - 1)
    if hi is None:
        probes.append(nodes[-1] + 1)
    return all(evaluate(f0, x) == evaluate(g, x) for x in probes)
