"""Simple polygons, vertex census, and exact union/intersection tracing.

Boolean operations work on the overlay of the two boundaries: every edge is
split at all contact points, each elementary piece is classified against the
other polygon, and the kept pieces are linked into directed cycles.  The
cycles of a result inherit the counterclockwise orientation of the inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .geom import (IntersectionKind, Orientation, Owner, Point, cross, midpoint,
                   on_segment, orientation, point, segment_intersection, signed_area2)
from .plf import LemmaViolation, VertexCensus


class PolygonError(ValueError):
    pass


class TooFewVertices(PolygonError):
    pass


class DuplicatePoint(PolygonError):
    pass


class CollinearVertex(PolygonError):
    pass


class SelfIntersecting(PolygonError):
    pass


class BoundaryDegenerate(PolygonError):
    """The two boundaries touch in a way the tracer does not resolve."""


class Location(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class Status(Enum):
    SIMPLE = "simple"
    MULTIPLE_COMPONENTS = "multiple_components"
    HAS_HOLE = "has_hole"
    EMPTY = "empty"
    BOUNDARY_DEGENERATE = "boundary_degenerate"


@dataclass(frozen=True)
class SimplePolygon:
    """A simple polygon with counterclockwise vertices, all of them true corners."""

    vertices: Tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def turn(self, i: int) -> Orientation:
        vs = self.vertices
        return orientation(vs[i - 1], vs[i], vs[(i + 1) % len(vs)])

    def convex_vertices(self) -> List[Point]:
        return [v for i, v in enumerate(self.vertices) if self.turn(i) is Orientation.COUNTERCLOCKWISE]

    def concave_vertices(self) -> List[Point]:
        return [v for i, v in enumerate(self.vertices) if self.turn(i) is Orientation.CLOCKWISE]

    def area2(self):
        return signed_area2(self.vertices)


def polygon_new(vertices: Sequence) -> SimplePolygon:
    """Validate ``vertices`` as a simple polygon, reorienting it counterclockwise."""
    vs = [point(*v) for v in vertices]
    n = len(vs)
    if n < 3:
        raise TooFewVertices(f"a polygon needs at least 3 vertices, got {n}")
    if len(set(vs)) != n:
        raise DuplicatePoint("repeated vertex")
    for i in range(n):
        if orientation(vs[i - 1], vs[i], vs[(i + 1) % n]) is Orientation.COLLINEAR:
            raise CollinearVertex(f"{vs[i]} is collinear with its neighbours")
    edges = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segment_intersection(edges[i], edges[j]).kind is not IntersectionKind.EMPTY:
                raise SelfIntersecting(f"edges {edges[i]} and {edges[j]} meet")
    if signed_area2(vs) < 0:
        vs = [vs[0]] + vs[:0:-1]
    return SimplePolygon(tuple(vs))


def census_polygon(P: SimplePolygon) -> VertexCensus:
    c = len(P.convex_vertices())
    return VertexCensus(P.n, c, P.n - c)


def contains_point(P: SimplePolygon, q: Point) -> Location:
    """Exact winding-number classification of ``q`` against ``P``."""
    q = point(*q)
    winding = 0
    vs = P.vertices
    n = len(vs)
    for i in range(n):
        a = vs[i]
        b = vs[(i + 1) % n]
        if a.y <= q.y:
            if b.y > q.y:
                d = cross(a, b, q)
                if d > 0:
                    winding += 1
                elif d == 0:
                    return Location.BOUNDARY
            elif b.y == q.y and on_segment(q, a, b):
                return Location.BOUNDARY
        else:
            if b.y <= q.y:
                d = cross(a, b, q)
                if d < 0:
                    winding -= 1
                elif d == 0:
                    return Location.BOUNDARY
    return Location.INTERIOR if winding else Location.EXTERIOR


class BoundaryPosition(NamedTuple):
    """Position on a polygon boundary: edge index and squared-length-scaled
    offset along that edge.  Tuples order positions counterclockwise from
    vertex 0."""

    edge: int
    offset: object


def locate(P: SimplePolygon, p: Point) -> BoundaryPosition:
    vs = P.vertices
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if p == a:
            return BoundaryPosition(i, 0)
        if p != b and on_segment(p, a, b):
            return BoundaryPosition(i, (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y))
    raise ValueError(f"{p} is not on the boundary")


def _strictly_inside_arc(pos, start, end) -> bool:
    if start < end:
        return start < pos < end
    return pos > start or pos < end


def open_arc_vertices(P: SimplePolygon, start: BoundaryPosition,
                      end: BoundaryPosition) -> List[int]:
    """Indices of vertices strictly inside the counterclockwise arc start -> end."""
    return [i for i in range(P.n)
            if _strictly_inside_arc(BoundaryPosition(i, 0), start, end)]


@dataclass(frozen=True)
class PolygonDecomposition:
    """Cyclic breakpoint set on the boundary of one result polygon.

    ``owners[t]`` owns the arc from ``breakpoints[t]`` to ``breakpoints[t+1]``
    (cyclically).  With no breakpoints there is a single owner.  For a union
    ``k1c`` counts arcs of the first polygon containing one of its convex
    vertices; for an intersection the convexity roles follow the intersection
    convention, see :func:`polygon_intersection`.
    """

    breakpoints: Tuple[Point, ...]
    owners: Tuple[Owner, ...]
    positions1: Tuple[BoundaryPosition, ...] = ()
    positions2: Tuple[BoundaryPosition, ...] = ()
    k1c: int = 0
    k1r: int = 0
    k2c: int = 0
    k2r: int = 0

    @property
    def k(self) -> int:
        return len(self.breakpoints)

    @property
    def counts(self) -> Tuple[int, int, int, int]:
        return (self.k1c, self.k1r, self.k2c, self.k2r)


@dataclass(frozen=True)
class PolygonBooleanResult:
    operation: str
    status: Status
    components: Tuple[SimplePolygon, ...] = ()
    decompositions: Tuple[PolygonDecomposition, ...] = ()
    holes: Tuple[Tuple[Point, ...], ...] = ()
    # elementary boundary pieces of each component, tagged with their owner
    # (None on a shared overlap); used by the verifier's structural checks
    pieces: Tuple[Tuple[Tuple[Point, Point, Optional[Owner]], ...], ...] = field(default=(), repr=False)

    @property
    def polygon(self) -> SimplePolygon:
        if len(self.components) != 1:
            raise ValueError(f"result has {len(self.components)} components")
        return self.components[0]

    @property
    def decomposition(self) -> PolygonDecomposition:
        if len(self.decompositions) != 1:
            raise ValueError(f"result has {len(self.decompositions)} decompositions")
        return self.decompositions[0]


def _split_edges(P1: SimplePolygon, P2: SimplePolygon):
    e1, e2 = P1.edges(), P2.edges()
    splits1: List[List[Point]] = [[] for _ in e1]
    splits2: List[List[Point]] = [[] for _ in e2]
    contacts = set()
    overlap_ends = set()
    for i, s in enumerate(e1):
        for j, t in enumerate(e2):
            hit = segment_intersection(s, t)
            if hit.kind is IntersectionKind.EMPTY:
                continue
            splits1[i].extend(hit.points)
            splits2[j].extend(hit.points)
            if hit.kind is IntersectionKind.OVERLAP:
                overlap_ends.update(hit.points)
            else:
                p = hit.points[0]
                if p in s or p in t:
                    contacts.add(p)
    bad = contacts - overlap_ends
    if bad:
        raise BoundaryDegenerate(f"boundaries touch at {sorted(bad)[0]}")

    def pieces(edges, splits):
        out = []
        for (a, b), pts in zip(edges, splits):
            dx, dy = b.x - a.x, b.y - a.y
            inner = sorted({p for p in pts if p != a and p != b},
                           key=lambda p: (p.x - a.x) * dx + (p.y - a.y) * dy)
            chain = [a] + inner + [b]
            out.extend(zip(chain, chain[1:]))
        return out

    return pieces(e1, splits1), pieces(e2, splits2)


def _select_pieces(P1: SimplePolygon, P2: SimplePolygon, keep: Location):
    pieces1, pieces2 = _split_edges(P1, P2)
    undirected2 = {}
    for p, q in pieces2:
        undirected2[(p, q) if p < q else (q, p)] = (p, q)
    kept = []
    shared = set()
    for p, q in pieces1:
        key = (p, q) if p < q else (q, p)
        other = undirected2.get(key)
        if other is not None:
            shared.add(key)
            if other == (p, q):
                kept.append((p, q, None))
            continue
        loc = contains_point(P2, midpoint(p, q))
        if loc is Location.BOUNDARY:
            raise BoundaryDegenerate(f"piece {p}-{q} runs along the other boundary")
        if loc is keep:
            kept.append((p, q, Owner.FIRST))
    for p, q in pieces2:
        key = (p, q) if p < q else (q, p)
        if key in shared:
            continue
        loc = contains_point(P1, midpoint(p, q))
        if loc is Location.BOUNDARY:
            raise BoundaryDegenerate(f"piece {p}-{q} runs along the other boundary")
        if loc is keep:
            kept.append((p, q, Owner.SECOND))
    return kept


def _link_cycles(pieces):
    outgoing: Dict[Point, tuple] = {}
    incoming = set()
    for piece in pieces:
        p, q, _ = piece
        if p in outgoing or q in incoming:
            raise BoundaryDegenerate(f"result boundary pinches at {p if p in outgoing else q}")
        outgoing[p] = piece
        incoming.add(q)
    cycles = []
    seen = set()
    for start in sorted(outgoing):
        if start in seen:
            continue
        cycle = []
        p = start
        while p not in seen:
            seen.add(p)
            piece = outgoing.get(p)
            if piece is None:
                raise AssertionError("open boundary chain")
            cycle.append(piece)
            p = piece[1]
        if p != start:
            raise AssertionError("boundary chain does not close")
        cycles.append(cycle)
    return cycles


def _corners(cycle) -> List[Point]:
    pts = [piece[0] for piece in cycle]
    n = len(pts)
    return [pts[i] for i in range(n)
            if orientation(pts[i - 1], pts[i], pts[(i + 1) % n]) is not Orientation.COLLINEAR]


def _decompose(cycle, P1: SimplePolygon, P2: SimplePolygon) -> PolygonDecomposition:
    labels = [piece[2] for piece in cycle]
    firm = [i for i, lab in enumerate(labels) if lab is not None]
    if not firm or all(labels[i] is labels[firm[0]] for i in firm):
        owner = labels[firm[0]] if firm else Owner.FIRST
        return PolygonDecomposition((), (owner,))
    m = len(cycle)
    # start at a piece whose preceding firm piece has the other owner
    start = next(i for j, i in enumerate(firm) if labels[firm[j - 1]] is not labels[i])
    owner = labels[start]
    bps = [cycle[start][0]]
    owners = [owner]
    for step in range(1, m):
        i = (start + step) % m
        lab = labels[i]
        if lab is not None and lab is not owner:
            bps.append(cycle[i][0])
            owner = lab
            owners.append(owner)
    first = bps.index(min(bps))
    bps = bps[first:] + bps[:first]
    owners = owners[first:] + owners[:first]
    return PolygonDecomposition(tuple(bps), tuple(owners),
                                tuple(locate(P1, b) for b in bps),
                                tuple(locate(P2, b) for b in bps))


def _census_arcs(decomp: PolygonDecomposition, P1: SimplePolygon, P2: SimplePolygon,
                 inward: bool) -> PolygonDecomposition:
    """Count c/r arcs and run the witness check on each.

    For a union (``inward=False``) an arc owned by P_i is a c-arc when it
    contains a convex vertex of P_i, and every r-arc must see a concave
    vertex of the other polygon inside the other polygon's matching arc.
    For an intersection the roles of convex and concave are exchanged.
    """
    k = decomp.k
    if k == 0:
        return decomp
    polys = {Owner.FIRST: P1, Owner.SECOND: P2}
    positions = {Owner.FIRST: decomp.positions1, Owner.SECOND: decomp.positions2}
    want = Orientation.CLOCKWISE if inward else Orientation.COUNTERCLOCKWISE
    witness = Orientation.COUNTERCLOCKWISE if inward else Orientation.CLOCKWISE
    turns = {o: [polys[o].turn(i) for i in range(polys[o].n)] for o in polys}
    marked = {(Owner.FIRST, True): 0, (Owner.FIRST, False): 0,
              (Owner.SECOND, True): 0, (Owner.SECOND, False): 0}
    for t in range(k):
        owner = decomp.owners[t]
        other = owner.other
        pos = positions[owner]
        own_arc = open_arc_vertices(polys[owner], pos[t], pos[(t + 1) % k])
        has = any(turns[owner][i] is want for i in own_arc)
        marked[owner, has] += 1
        if not has:
            opos = positions[other]
            other_arc = open_arc_vertices(polys[other], opos[t], opos[(t + 1) % k])
            if not any(turns[other][i] is witness for i in other_arc):
                raise LemmaViolation(f"arc {t} owned by polygon {int(owner)} has no witness vertex")
    if inward:
        return replace(decomp, k1r=marked[Owner.FIRST, True], k1c=marked[Owner.FIRST, False],
                               k2r=marked[Owner.SECOND, True], k2c=marked[Owner.SECOND, False])
    return replace(decomp, k1c=marked[Owner.FIRST, True], k1r=marked[Owner.FIRST, False],
                           k2c=marked[Owner.SECOND, True], k2r=marked[Owner.SECOND, False])


def _boolean(P1: SimplePolygon, P2: SimplePolygon, op: str, strict: bool) -> PolygonBooleanResult:
    keep = Location.EXTERIOR if op == "union" else Location.INTERIOR
    try:
        cycles = _link_cycles(_select_pieces(P1, P2, keep))
    except BoundaryDegenerate:
        if strict:
            raise
        return PolygonBooleanResult(op, Status.BOUNDARY_DEGENERATE)
    outers, holes = [], []
    for cycle in cycles:
        corners = _corners(cycle)
        (outers if signed_area2(corners) > 0 else holes).append((cycle, corners))
    if op == "union" and holes:
        return PolygonBooleanResult(op, Status.HAS_HOLE,
                                    tuple(SimplePolygon(tuple(c)) for _, c in outers),
                                    holes=tuple(tuple(c) for _, c in holes))
    if holes:
        raise AssertionError("an intersection cannot have holes")
    components, decomps, pieces = [], [], []
    for cycle, corners in outers:
        components.append(SimplePolygon(tuple(corners)))
        decomp = _decompose(cycle, P1, P2)
        decomps.append(_census_arcs(decomp, P1, P2, inward=(op != "union")))
        pieces.append(tuple(cycle))
    if not components:
        status = Status.EMPTY
    elif len(components) == 1:
        status = Status.SIMPLE
    else:
        status = Status.MULTIPLE_COMPONENTS
    if op == "union" and status is Status.MULTIPLE_COMPONENTS:
        decomps = []
    return PolygonBooleanResult(op, status, tuple(components), tuple(decomps), pieces=tuple(pieces))


def polygon_union(P1: SimplePolygon, P2: SimplePolygon, *, strict: bool = True) -> PolygonBooleanResult:
    """Trace the boundary of P1 u P2.

    A single counterclockwise cycle gives status ``SIMPLE`` together with the
    breakpoint decomposition; disjoint interiors give ``MULTIPLE_COMPONENTS``
    and a clockwise cycle ``HAS_HOLE``.  Vertex-on-edge and vertex-on-vertex
    contacts that are not the ends of a collinear overlap raise
    :class:`BoundaryDegenerate` unless ``strict`` is false, in which case the
    result carries that status instead.
    """
    return _boolean(P1, P2, "union", strict)


def polygon_intersection(P1: SimplePolygon, P2: SimplePolygon, *,
                         strict: bool = True) -> PolygonBooleanResult:
    """Every connected component of P1 n P2, each with its own decomposition.

    In the decompositions ``k1r`` counts arcs of P1 that contain one of its
    concave vertices and ``k1c`` the remaining arcs of P1; likewise for P2.
    """
    return _boolean(P1, P2, "intersection", strict)
