"""Exact-coordinate generators for configurations that attain the bounds.

Every builder places points on a strictly convex carrier (the parabola
``y = x**2`` for envelopes, the unit circle for unions), then perturbs the
configuration in stages.  Perturbation sizes are found by a certified
search: a candidate is accepted only after the exact envelope or boolean
operation confirms the intended change in vertex counts, otherwise the step
is halved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .bounds import envelope_bound, intersection_bound, union_bound
from .geom import Owner, Point, line_intersection, midpoint, rational
from .plf import PLFunction, census, evaluate, from_points, lower_envelope
from .polygon import (PolygonError, SimplePolygon, Status, census_polygon,
                      contains_point, Location, locate, polygon_intersection, polygon_new,
                      polygon_union)

MAX_HALVINGS = 60


class InfeasibleParams(ValueError):
    pass


@dataclass
class ConstructionTrace:
    kind: str
    params: Dict[str, int]
    stage_log: List[Tuple[str, Tuple[Point, ...]]] = field(default_factory=list)
    auxiliary: Dict[str, object] = field(default_factory=dict)
    expected_n0: int = 0
    expected_secondary: int = 0

    def log(self, stage: str, points: Sequence[Point] = ()) -> None:
        self.stage_log.append((stage, tuple(points)))


def _check_params(**params):
    for name, value in params.items():
        if value < 0:
            raise InfeasibleParams(f"{name} must be non-negative, got {value}")


# --------------------------------------------------------------------------
# Envelopes
# --------------------------------------------------------------------------

def _envelope_layout(c1: int, c2: int) -> List[Tuple[int, int]]:
    """Left-to-right order of the carrier points (family, index)."""
    order: List[Tuple[int, int]] = []
    if c1 == c2:
        for j in range(c1 + 2):
            order += [(2, j), (1, j)]
    else:
        for j in range(c1 + 1):
            order += [(2, j), (1, j)]
        order += [(2, j) for j in range(c1 + 1, c2 + 1)]
        order += [(1, c1 + 1), (2, c2 + 1)]
    return order


def _functions(A1, A2) -> Tuple[PLFunction, PLFunction]:
    return from_points(A1), from_points(A2)


def _envelope_n0(A1, A2) -> Tuple[int, int]:
    f0, _ = lower_envelope(*_functions(A1, A2))
    cen = census(f0)
    return cen.n, cen.c


def _owned_stretches(f_own: PLFunction, f_other: PLFunction, own: Owner, A_own):
    """x-intervals of the segments of gamma(A_own) on which the envelope is
    strictly below the other graph, longest first."""
    f1, f2 = (f_own, f_other) if own is Owner.FIRST else (f_other, f_own)
    _, decomp = lower_envelope(f1, f2)
    bps = [None] + [b.x for b in decomp.breakpoints] + [None]
    out = []
    for t, owner in enumerate(decomp.piece_owners):
        if owner is not own:
            continue
        lo, hi = bps[t], bps[t + 1]
        for j in range(len(A_own) - 1):
            s_lo = A_own[j].x if lo is None else max(lo, A_own[j].x)
            s_hi = A_own[j + 1].x if hi is None else min(hi, A_own[j + 1].x)
            if s_lo < s_hi:
                out.append((s_hi - s_lo, s_lo, s_hi, j))
    out.sort(key=lambda item: (-item[0], item[1]))
    return out


def _insert_concave_envelope(A_own: List[Point], A_other: List[Point], own: Owner,
                             trace: ConstructionTrace, label: str) -> List[Point]:
    """Lift a point of gamma(A_own) lying on the envelope, creating one new
    concave vertex that stays on the envelope."""
    f_own, f_other = from_points(A_own), from_points(A_other)
    A1, A2 = (A_own, A_other) if own is Owner.FIRST else (A_other, A_own)
    n0, c0 = _envelope_n0(A1, A2)
    cen = census(f_own)
    for _, s_lo, s_hi, j in _owned_stretches(f_own, f_other, own, A_own):
        x = (Fraction(s_lo) + s_hi) / 2
        x = rational(x)
        gap = evaluate(f_other, x) - evaluate(f_own, x)
        if gap <= 0:
            continue
        delta = Fraction(gap) / 2
        for _ in range(MAX_HALVINGS):
            e = Point(x, rational(evaluate(f_own, x) + delta))
            candidate = A_own[:j + 1] + [e] + A_own[j + 1:]
            cand1, cand2 = (candidate, A_other) if own is Owner.FIRST else (A_other, candidate)
            try:
                new_cen = census(from_points(candidate))
            except ValueError:
                new_cen = None
            if new_cen == (cen.n + 1, cen.c, cen.r + 1) and _envelope_n0(cand1, cand2) == (n0 + 1, c0):
                trace.log(label, (e,))
                trace.auxiliary.setdefault("e_prime", []).append(e)
                return candidate
            delta /= 2
    raise InfeasibleParams(f"no admissible lift found for {label}")


def _envelope_points(c1: int, c2: int, r1: int, r2: int, trace: ConstructionTrace):
    """Point lists A1, A2 (graphs are the polylines through them extended by
    rays) realizing E(c1, c2, r1, r2) with c1 <= c2."""
    order = _envelope_layout(c1, c2)
    offset = len(order) // 2
    pos: Dict[Tuple[int, int], Point] = {}
    for i, key in enumerate(order):
        x = i - offset
        pos[key] = Point(x, x * x)
    A1 = [pos[1, j] for j in range(c1 + 2)]
    A2 = [pos[2, j] for j in range(c2 + 2)]
    trace.log("carrier", [pos[key] for key in order])

    z = min(r2, max(0, c2 - c1 - 1))
    f1 = from_points(A1)
    ds = []
    for i in range(1, z + 1):
        left, right = pos[2, c1 + i], pos[2, c1 + i + 1]
        x = rational(Fraction(left.x + right.x, 2))
        ds.append(Point(x, rational(evaluate(f1, x) + 1)))
    A2 = sorted(A2 + ds)
    trace.log("raised points d", ds)
    trace.auxiliary["d"] = ds
    trace.auxiliary["z"] = z

    for i in range(r1):
        A1 = _insert_concave_envelope(A1, A2, Owner.FIRST, trace, f"lift graph 1 #{i + 1}")
    for i in range(r2 - z):
        A2 = _insert_concave_envelope(A2, A1, Owner.SECOND, trace, f"lift graph 2 #{i + 1}")
    return A1, A2


def build_envelope_extremal(c1: int, c2: int, r1: int, r2: int
                            ) -> Tuple[PLFunction, PLFunction, ConstructionTrace]:
    """Two functions with censuses (c_i + r_i, c_i, r_i) whose lower envelope
    has exactly the maximum number of vertices for that profile."""
    _check_params(c1=c1, c2=c2, r1=r1, r2=r2)
    swapped = c1 > c2
    if swapped:
        c1, c2, r1, r2 = c2, c1, r2, r1
    trace = ConstructionTrace("envelope", {"c1": c1, "c2": c2, "r1": r1, "r2": r2})
    trace.expected_n0 = envelope_bound(c1 + r1, c1, c2 + r2, c2).n_bound
    trace.expected_secondary = c1 + c2
    A1, A2 = _envelope_points(c1, c2, r1, r2, trace)
    f1, f2 = _functions(A1, A2)
    trace.auxiliary["A1"] = tuple(A1)
    trace.auxiliary["A2"] = tuple(A2)
    n0, c0 = _envelope_n0(A1, A2)
    if (n0, c0) != (trace.expected_n0, trace.expected_secondary):
        raise InfeasibleParams(f"construction reached n0={n0}, c0={c0}; expected "
                               f"{trace.expected_n0}, {trace.expected_secondary}")
    if swapped:
        trace.params = {"c1": c2, "c2": c1, "r1": r2, "r2": r1}
        trace.auxiliary["A1"], trace.auxiliary["A2"] = trace.auxiliary["A2"], trace.auxiliary["A1"]
        return f2, f1, trace
    return f1, f2, trace


# --------------------------------------------------------------------------
# Unions
# --------------------------------------------------------------------------

def _circle_point(t: Fraction) -> Point:
    d = 1 + t * t
    return Point(rational((1 - t * t) / d), rational(2 * t / d))


def _circle_params(count: int) -> List[Fraction]:
    """Increasing rational tangent half-angles for ``count`` roughly evenly
    spaced points on the unit circle."""
    ts = []
    for k in range(count):
        theta = -math.pi + 2 * math.pi * (k + 0.5) / count
        ts.append(Fraction(math.tan(theta / 2)).limit_denominator(256))
    if any(a >= b for a, b in zip(ts, ts[1:])):
        raise InfeasibleParams("circle parameters collided")
    return ts


def _insert_concave_polygon(polys: Dict[Owner, SimplePolygon], own: Owner,
                            keep: Location, trace: ConstructionTrace, label: str) -> SimplePolygon:
    """Dent an exposed edge of ``polys[own]`` inward, adding one concave vertex
    that remains a vertex of the result."""
    op = polygon_union if keep is Location.EXTERIOR else polygon_intersection
    base = op(polys[Owner.FIRST], polys[Owner.SECOND])
    comp = base.polygon
    n0 = comp.n
    sec0 = census_polygon(comp).c if keep is Location.EXTERIOR else census_polygon(comp).r
    P = polys[own]
    cen = census_polygon(P)
    pieces = [(p, q) for p, q, lab in base.pieces[0] if lab is own]

    def length2(piece):
        p, q = piece
        return (q.x - p.x) ** 2 + (q.y - p.y) ** 2

    pieces.sort(key=lambda pc: (-length2(pc), pc))
    for p, q in pieces:
        i = locate(P, p).edge
        a, b = P.vertices[i], P.vertices[(i + 1) % P.n]
        ex, ey = b.x - a.x, b.y - a.y
        frac = Fraction((q.x - p.x) * ex + (q.y - p.y) * ey) / (ex * ex + ey * ey)
        e = midpoint(p, q)
        delta = frac / 4
        for _ in range(MAX_HALVINGS):
            e2 = Point(rational(e.x - delta * ey), rational(e.y + delta * ex))
            verts = list(P.vertices[:i + 1]) + [e2] + list(P.vertices[i + 1:])
            delta /= 2
            try:
                cand = polygon_new(verts)
            except PolygonError:
                continue
            if census_polygon(cand) != (cen.n + 1, cen.c, cen.r + 1):
                continue
            trial = dict(polys)
            trial[own] = cand
            res = op(trial[Owner.FIRST], trial[Owner.SECOND], strict=False)
            if res.status is not Status.SIMPLE:
                continue
            cen0 = census_polygon(res.polygon)
            sec = cen0.c if keep is Location.EXTERIOR else cen0.r
            if cen0.n == n0 + 1 and sec == sec0:
                trace.log(label, (e2,))
                trace.auxiliary.setdefault("e_prime", []).append(e2)
                return cand
    raise InfeasibleParams(f"no admissible dent found for {label}")


def build_union_extremal(c1: int, c2: int, r1: int, r2: int
                         ) -> Tuple[SimplePolygon, SimplePolygon, ConstructionTrace]:
    """Two polygons with censuses (c_i + r_i, c_i, r_i) whose union is a simple
    polygon with the maximum number of vertices for that profile."""
    _check_params(r1=r1, r2=r2)
    if min(c1, c2) < 3:
        raise InfeasibleParams("polygons have at least 3 convex vertices")
    swapped = c1 > c2
    if swapped:
        c1, c2, r1, r2 = c2, c1, r2, r1
    trace = ConstructionTrace("union", {"c1": c1, "c2": c2, "r1": r1, "r2": r2})
    trace.expected_n0 = union_bound(c1 + r1, c1, c2 + r2, c2).n_bound
    trace.expected_secondary = c1 + c2

    order = [(fam, j) for j in range(1, c1 + 1) for fam in (2, 1)]
    order += [(2, j) for j in range(c1 + 1, c2 + 1)]
    ts = _circle_params(len(order))
    pos = {key: _circle_point(t) for key, t in zip(order, ts)}
    a1 = [pos[1, j] for j in range(1, c1 + 1)]
    a2 = [pos[2, j] for j in range(1, c2 + 1)]
    trace.log("carrier", [pos[key] for key in order])
    P1 = polygon_new(a1)
    P2 = polygon_new(a2)

    z = min(r2, c2 - c1)
    trace.auxiliary["z"] = z
    if z:
        core = polygon_intersection(P1, P2).polygon
        q = Point(rational(Fraction(sum(v.x for v in core.vertices)) / core.n),
                  rational(Fraction(sum(v.y for v in core.vertices)) / core.n))
        trace.auxiliary["q"] = q
        chord_a, chord_b = pos[1, c1], pos[1, 1]
        ds = []
        ring = list(a2)
        for i in range(1, z + 1):
            target = pos[2, c1 + i]
            hit = line_intersection(q, target, chord_a, chord_b)
            lam = Fraction(hit.x - q.x) / (target.x - q.x) if target.x != q.x else \
                Fraction(hit.y - q.y) / (target.y - q.y)
            d = Point(rational(q.x + lam / 2 * (target.x - q.x)),
                      rational(q.y + lam / 2 * (target.y - q.y)))
            ds.append(d)
            k = ring.index(target)
            ring.insert(k + 1, d)
        P2 = polygon_new(ring)
        trace.log("dents d", ds)
        trace.auxiliary["d"] = ds

    polys = {Owner.FIRST: P1, Owner.SECOND: P2}
    for i in range(r1):
        polys[Owner.FIRST] = _insert_concave_polygon(polys, Owner.FIRST, Location.EXTERIOR,
                                                     trace, f"dent polygon 1 #{i + 1}")
    for i in range(r2 - z):
        polys[Owner.SECOND] = _insert_concave_polygon(polys, Owner.SECOND, Location.EXTERIOR,
                                                      trace, f"dent polygon 2 #{i + 1}")
    P1, P2 = polys[Owner.FIRST], polys[Owner.SECOND]
    res = polygon_union(P1, P2)
    if res.status is not Status.SIMPLE:
        raise InfeasibleParams(f"union is {res.status.value}")
    cen0 = census_polygon(res.polygon)
    if (cen0.n, cen0.c) != (trace.expected_n0, trace.expected_secondary):
        raise InfeasibleParams(f"construction reached n0={cen0.n}, c0={cen0.c}; expected "
                               f"{trace.expected_n0}, {trace.expected_secondary}")
    if swapped:
        trace.params = {"c1": c2, "c2": c1, "r1": r2, "r2": r1}
        return P2, P1, trace
    return P1, P2, trace


# --------------------------------------------------------------------------
# Intersections
# --------------------------------------------------------------------------

def _intersection_case(r1: int, r2: int) -> str:
    gap = r2 - r1
    if gap >= 3:
        return "r2>=r1+3"
    return {0: "r2=r1", 1: "r2=r1+1", 2: "r2=r1+2"}[gap]


def _reduced_convex_count(r1: int, r2: int) -> int:
    gap = r2 - r1
    if gap <= 1:
        return r2
    if gap == 2:
        return r2 - 1
    return r2 - 2


def _second_ring(case: str, A2, p, p0, mu):
    a2, z2 = A2[0], A2[-1]
    chain = list(A2)
    aux = {}
    if case == "r2=r1+1":
        bottom = [p]
    elif case == "r2=r1":
        p3 = line_intersection(a2, p, z2, p0)
        aux["p3"] = p3
        bottom = [p3]
    else:
        p2 = Point(rational(p.x + mu * (z2.x - p.x)), rational(p.y + mu * (z2.y - p.y)))
        aux["p2"] = p2
        if case == "r2=r1+2":
            p3 = line_intersection(a2, p, z2, p0)
            aux["p3"] = p3
            bottom = [p2, p3]
        else:
            p1 = Point(rational(p.x + mu * (a2.x - p.x)), rational(p.y + mu * (a2.y - p.y)))
            aux["p1"] = p1
            bottom = [p2, p0, p1]
    return chain + bottom, aux


def build_intersection_extremal(r1: int, r2: int, c1: int, c2: int
                                ) -> Tuple[SimplePolygon, SimplePolygon, ConstructionTrace]:
    """Two polygons with censuses (c_i + r_i, c_i, r_i) whose intersection is a
    single polygon with the maximum number of vertices for that profile.

    Both polygons close an extremal envelope configuration from below: the
    first through a deep apex ``q``, the second through a case-dependent
    chain of points near ``q``.
    """
    _check_params(r1=r1, r2=r2)
    if min(c1, c2) < 3:
        raise InfeasibleParams("polygons have at least 3 convex vertices")
    swapped = r1 > r2
    if swapped:
        r1, r2, c1, c2 = r2, r1, c2, c1
    case = _intersection_case(r1, r2)
    trace = ConstructionTrace("intersection", {"r1": r1, "r2": r2, "c1": c1, "c2": c2})
    trace.expected_n0 = intersection_bound(r1 + c1, r1, r2 + c2, r2).n_bound
    trace.expected_secondary = r1 + r2
    trace.auxiliary["case"] = case
    ec1, ec2 = r1, _reduced_convex_count(r1, r2)
    er1, er2 = c1 - 3, c2 - 3
    sub = ConstructionTrace("envelope", {"c1": ec1, "c2": ec2, "r1": er1, "r2": er2})
    A1, A2 = _envelope_points(ec1, ec2, er1, er2, sub)
    trace.stage_log.extend((f"envelope: {name}", pts) for name, pts in sub.stage_log)
    trace.auxiliary["envelope_params"] = dict(sub.params)
    envelope_n0 = envelope_bound(ec1 + er1, ec1, ec2 + er2, ec2).n_bound
    trace.auxiliary["envelope_n0"] = envelope_n0
    trace.auxiliary["additional_vertices"] = trace.expected_n0 - envelope_n0

    pts = A1 + A2
    ymin = min(v.y for v in pts)
    height = max(max(v.y for v in pts) - ymin, max(v.x for v in pts) - min(v.x for v in pts), 1)
    mid = Fraction(A1[0].x + A1[-1].x, 2)
    want1 = (r1 + c1, c1, r1)
    want2 = (r2 + c2, c2, r2)
    # the apex abscissa must avoid the verticals through the corners of P2
    for shift in (0, Fraction(1, 3), Fraction(-1, 3), Fraction(2, 3), Fraction(-2, 3)):
        qx = rational(mid + shift)
        found = _place_apex(case, A1, A2, qx, ymin, height, want1, want2, trace)
        if found is not None:
            P1, P2 = found
            if swapped:
                trace.params = {"r1": r2, "r2": r1, "c1": c2, "c2": c1}
                return P2, P1, trace
            return P1, P2, trace
    raise InfeasibleParams(f"no certified placement found for case {case}")


def _place_apex(case, A1, A2, qx, ymin, height, want1, want2, trace):
    depth = 8 * height
    for _ in range(4):
        q = Point(qx, ymin - depth)
        try:
            P1 = polygon_new(A1 + [q])
        except PolygonError:
            depth *= 2
            continue
        if census_polygon(P1) != want1:
            depth *= 2
            continue
        h = Fraction(depth, 16)
        for _ in range(6):
            p = Point(qx, rational(q.y + h))
            for kappa in (1, 2, 4, 8, Fraction(1, 2)):
                p0 = Point(qx, rational(q.y - kappa * h))
                mu = h / (2 * depth)
                for _ in range(8):
                    result = _try_intersection(case, A2, P1, p, p0, mu, want2, trace)
                    if result is not None:
                        P2, aux = result
                        trace.auxiliary.update(q=q, p=p, p0=p0, **aux)
                        trace.log("apex q and closing chain", [q, p, p0] + list(aux.values()))
                        return P1, P2
                    if case not in ("r2=r1+2", "r2>=r1+3"):
                        break
                    mu /= 2
            h /= 2
        depth *= 2
    return None


def _try_intersection(case, A2, P1, p, p0, mu, want2, trace):
    if contains_point(P1, p) is not Location.INTERIOR:
        return None
    try:
        ring, aux = _second_ring(case, A2, p, p0, mu)
        P2 = polygon_new(ring)
    except (PolygonError, ValueError):
        return None
    if census_polygon(P2) != want2:
        return None
    res = polygon_intersection(P1, P2, strict=False)
    if res.status is not Status.SIMPLE:
        return None
    cen0 = census_polygon(res.polygon)
    if (cen0.n, cen0.r) != (trace.expected_n0, trace.expected_secondary):
        return None
    return P2, aux
