"""Random instances and bound/witness checking campaigns.

The structural checks recompute turns, arcs and counts from raw coordinates
instead of trusting the counts stored in a decomposition, and the sampling
oracles evaluate functions and membership with scaled integer arithmetic
that shares no code with :mod:`plf` or :mod:`polygon`.
"""
from __future__ import annotations

import bisect
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .bounds import InvalidCensus, envelope_bound, intersection_bound, union_bound
from .geom import Owner, Point, on_segment
from .plf import (LemmaViolation, PLFunction, VertexCensus, census, lower_envelope, piece_in_graph,
                  plf_new, upper_envelope)
from .polygon import (BoundaryDegenerate, PolygonError, SimplePolygon, Status, census_polygon,
                      polygon_intersection, polygon_new, polygon_union)

ENVELOPE_SAMPLES = 1000
MEMBERSHIP_SAMPLES = 256


class ReportStatus(Enum):
    OK = "ok"
    SKIPPED = "skipped"
    VIOLATION = "violation"


@dataclass
class InstanceReport:
    kind: str
    seed: Optional[int]
    inputs: Tuple[VertexCensus, ...]
    output: Optional[VertexCensus]
    bound: Optional[int]
    status: ReportStatus
    checks: Dict[str, bool] = field(default_factory=dict)
    reason: Optional[str] = None
    trial: Optional[int] = None
    source: str = "random"

    @property
    def slack(self) -> Optional[int]:
        if self.bound is None or self.output is None:
            return None
        return self.bound - self.output.n

    @property
    def failed_checks(self) -> List[str]:
        return sorted(name for name, ok in self.checks.items() if not ok)


def _finish(report: InstanceReport) -> InstanceReport:
    if report.status is not ReportStatus.SKIPPED:
        failed = report.failed_checks
        if failed:
            report.status = ReportStatus.VIOLATION
            report.reason = report.reason or ",".join(failed)
    return report


# --------------------------------------------------------------------------
# Generators
# --------------------------------------------------------------------------

def random_plf(seed, n: int, c: int) -> PLFunction:
    """A function with exactly ``n`` vertices of which ``c`` are convex.

    Slopes are integers with ``c`` ascents and ``n - c`` descents in random
    order; vertex abscissas are distinct integers.
    """
    if not 0 <= c <= n:
        raise InvalidCensus(f"need 0 <= c <= n, got n={n}, c={c}")
    rng = random.Random(seed)
    steps = [1] * c + [-1] * (n - c)
    rng.shuffle(steps)
    slope = rng.randint(-3, 3)
    slopes = [slope]
    for s in steps:
        slope += s * rng.randint(1, 3)
        slopes.append(slope)
    if n == 0:
        return plf_new([], slope, slope, anchor=Point(0, rng.randint(-10, 10)))
    span = max(12, 2 * n)
    xs = sorted(rng.sample(range(-span, span + 1), n))
    y = rng.randint(-10, 10)
    vertices = [Point(xs[0], y)]
    for j in range(1, n):
        y += slopes[j] * (xs[j] - xs[j - 1])
        vertices.append(Point(xs[j], y))
    f = plf_new(vertices, slopes[0], slopes[-1])
    assert census(f) == (n, c, n - c)
    return f


def random_polygon(seed, n: int, scale: int = 1000) -> SimplePolygon:
    """A random star-shaped simple polygon with integer coordinates.

    Vertices sit at random radii around a random center in strictly
    increasing angular order.  Draws that round to a collinear or otherwise
    invalid polygon are redrawn.
    """
    if n < 3:
        raise InvalidCensus("a polygon needs at least 3 vertices")
    rng = random.Random(seed)
    while True:
        cx = rng.randint(-scale // 3, scale // 3)
        cy = rng.randint(-scale // 3, scale // 3)
        cuts = sorted(rng.random() for _ in range(n))
        if any(b - a < 1e-3 for a, b in zip(cuts, cuts[1:])) or cuts[-1] - cuts[0] > 1 - 1e-3:
            continue
        pts = []
        for u in cuts:
            theta = 2 * math.pi * u
            radius = rng.uniform(0.3, 1.0) * scale
            pts.append(Point(cx + round(radius * math.cos(theta)), cy + round(radius * math.sin(theta))))
        try:
            return polygon_new(pts)
        except PolygonError:
            continue


# --------------------------------------------------------------------------
# Independent oracles
# --------------------------------------------------------------------------

def _lcm_denominators(values) -> int:
    out = 1
    for v in values:
        d = Fraction(v).denominator
        out = out * d // math.gcd(out, d)
    return out


class _ScaledFunction:
    """Evaluates ``S * f(X / S)`` for integer ``X`` as an integer fraction
    ``(A + B X) / q`` on each linear piece."""

    def __init__(self, f: PLFunction, scale: int):
        vs = f.vertices
        if vs:
            bases = [vs[0]] + list(vs)
        else:
            bases = [f.anchor]
        self.breaks = [v.x * scale for v in vs]
        self.pieces = []
        for base, s in zip(bases, f.slopes):
            s = Fraction(s)
            p, q = s.numerator, s.denominator
            A = q * base.y * scale - p * base.x * scale
            self.pieces.append((int(A), p, q))

    def __call__(self, X: int) -> Tuple[int, int]:
        A, B, q = self.pieces[bisect.bisect_right(self.breaks, X)]
        return A + B * X, q


def _cmp(a: Tuple[int, int], b: Tuple[int, int]) -> int:
    lhs, rhs = a[0] * b[1], b[0] * a[1]
    return (lhs > rhs) - (lhs < rhs)


def envelope_oracle(f0: PLFunction, f1: PLFunction, f2: PLFunction, *, upper: bool = False,
                    samples: int = ENVELOPE_SAMPLES, seed=0) -> int:
    """Number of sampled abscissas at which ``f0`` differs from the pointwise
    min (or max) of ``f1`` and ``f2``.  Samples include every vertex abscissa."""
    coords = []
    for f in (f0, f1, f2):
        for v in f.vertices:
            coords += [v.x, v.y]
        if f.anchor is not None:
            coords += [f.anchor.x, f.anchor.y]
    scale = _lcm_denominators(coords) * 8
    g0, g1, g2 = (_ScaledFunction(f, scale) for f in (f0, f1, f2))
    xs = [int(v.x * scale) for f in (f0, f1, f2) for v in f.vertices]
    lo, hi = (min(xs), max(xs)) if xs else (0, 0)
    pad = max((hi - lo) // 4, 4 * scale, 2 * samples)
    lo, hi = lo - pad, hi + pad
    rng = random.Random(seed)
    points = set(xs)
    while len(points) < samples:
        points.add(rng.randint(lo, hi))
    want = 1 if upper else -1
    bad = 0
    for X in sorted(points):
        a, b = g1(X), g2(X)
        ref = a if _cmp(a, b) in (want, 0) else b
        if _cmp(g0(X), ref) != 0:
            bad += 1
    return bad


def _integer_ring(points: Sequence[Point], scale: int) -> List[Tuple[int, int]]:
    return [(int(v.x * scale), int(v.y * scale)) for v in points]


def _membership(ring: Sequence[Tuple[int, int]], x: int, y: int) -> Optional[bool]:
    """Even-odd crossing test; ``None`` for a point on the boundary."""
    inside = False
    n = len(ring)
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        cr = (bx - ax) * (y - ay) - (by - ay) * (x - ax)
        if cr == 0 and min(ax, bx) <= x <= max(ax, bx) and min(ay, by) <= y <= max(ay, by):
            return None
        if (ay > y) != (by > y):
            # crossing abscissa compared without division
            side = cr if by > ay else -cr
            if side > 0:
                inside = not inside
    return inside


def membership_oracle(P1: SimplePolygon, P2: SimplePolygon, result: Sequence,
                      op: str, *, samples: int = MEMBERSHIP_SAMPLES, seed=0) -> int:
    """Number of sampled points whose membership in the result disagrees
    with the logical combination of membership in P1 and P2.

    ``result`` lists the boundary rings of the result (polygons or point
    sequences, holes included); a point is in the result when an odd number
    of rings contain it.  Samples landing on any boundary are redrawn.
    """
    loops = [P1.vertices, P2.vertices] + [getattr(R, "vertices", R) for R in result]
    scale = _lcm_denominators(c for loop in loops for v in loop for c in v) * 16
    rings = [_integer_ring(loop, scale) for loop in loops]
    xs = [x for ring in rings[:2] for x, _ in ring]
    ys = [y for ring in rings[:2] for _, y in ring]
    rng = random.Random(seed)
    bad = drawn = 0
    attempts = 0
    while drawn < samples and attempts < 20 * samples:
        attempts += 1
        x, y = rng.randint(min(xs), max(xs)), rng.randint(min(ys), max(ys))
        flags = [_membership(ring, x, y) for ring in rings]
        if None in flags:
            continue
        drawn += 1
        in1, in2 = flags[0], flags[1]
        expected = (in1 or in2) if op == "union" else (in1 and in2)
        if (sum(flags[2:]) % 2 == 1) != expected:
            bad += 1
    return bad


# --------------------------------------------------------------------------
# Envelope checks
# --------------------------------------------------------------------------

def _turns_plf(f: PLFunction) -> List[int]:
    """+1 for a convex vertex, -1 for a concave one, from the slope list."""
    s = f.slopes
    return [1 if s[j + 1] > s[j] else -1 for j in range(len(f.vertices))]


def _strictly_between(x, lo, hi) -> bool:
    return (lo is None or x > lo) and (hi is None or x < hi)


def check_envelope_instance(f1: PLFunction, f2: PLFunction, *, seed=0,
                            samples: int = ENVELOPE_SAMPLES) -> InstanceReport:
    """Check the envelope bound and every counting step behind it on one pair."""
    cen1, cen2 = census(f1), census(f2)
    report = InstanceReport("envelope", seed, (cen1, cen2), None, None, ReportStatus.OK)
    try:
        f0, dec = lower_envelope(f1, f2)
    except LemmaViolation as exc:
        report.checks["concave_witness"] = False
        report.reason = str(exc)
        return _finish(report)
    cen0 = census(f0)
    report.output = cen0
    report.bound = envelope_bound(cen1.n, cen1.c, cen2.n, cen2.c).n_bound
    checks = report.checks
    checks["bound"] = cen0.n <= report.bound
    checks["convex_count"] = cen0.c <= cen1.c + cen2.c

    funcs = {Owner.FIRST: f1, Owner.SECOND: f2}
    turns = {o: _turns_plf(f) for o, f in funcs.items()}
    convex = {o: {v for v, t in zip(f.vertices, turns[o]) if t > 0} for o, f in funcs.items()}
    t0 = _turns_plf(f0)
    checks["convex_subset"] = all(v in convex[Owner.FIRST] | convex[Owner.SECOND]
                                  for v, t in zip(f0.vertices, t0) if t > 0)
    allowed = set(f1.vertices) | set(f2.vertices) | set(dec.breakpoints)
    checks["vertex_subset"] = set(f0.vertices) <= allowed

    owners = dec.piece_owners
    checks["alternation"] = all(a is not b for a, b in zip(owners, owners[1:]))
    k = len(dec.breakpoints)
    bx = [None] + [b.x for b in dec.breakpoints] + [None]
    counts = {(o, has): 0 for o in Owner for has in (True, False)}
    witness_ok = True
    for t in range(1, k):
        owner = owners[t]
        lo, hi = bx[t], bx[t + 1]
        has = any(_strictly_between(v.x, lo, hi) for v in convex[owner])
        counts[owner, has] += 1
        if not has:
            other = owner.other
            if not any(tt < 0 and _strictly_between(v.x, lo, hi)
                       for v, tt in zip(funcs[other].vertices, turns[other])):
                witness_ok = False
    x1, y1 = counts[Owner.FIRST, True], counts[Owner.FIRST, False]
    x2, y2 = counts[Owner.SECOND, True], counts[Owner.SECOND, False]
    checks["concave_witness"] = witness_ok
    checks["census_agrees"] = (x1, y1, x2, y2) == (dec.k1c, dec.k1r, dec.k2c, dec.k2r)
    checks["piece_balance"] = abs((x1 + y1) - (x2 + y2)) <= 1
    checks["piece_census_system"] = (checks["piece_balance"] and x1 <= cen1.c and x2 <= cen2.c
                         and y1 <= cen2.r and y2 <= cen1.r)
    checks["counting"] = cen0.n <= cen1.n + cen2.n + k - y1 - y2

    in_owner = all(piece_in_graph(f0, funcs[owners[t]], bx[t], bx[t + 1]) for t in range(k + 1))
    removable = any(piece_in_graph(f0, funcs[o], bx[t - 1], bx[t + 1])
                    for t in range(1, k + 1) for o in Owner)
    checks["minimality"] = in_owner and not removable

    checks["oracle_min"] = envelope_oracle(f0, f1, f2, samples=samples, seed=seed) == 0
    try:
        fu, _ = upper_envelope(f1, f2)
    except LemmaViolation:
        checks["upper_concave_witness"] = False
    else:
        cu = census(fu)
        checks["upper_bound"] = cu.n <= envelope_bound(cen1.n, cen1.r, cen2.n, cen2.r).n_bound
        checks["oracle_max"] = envelope_oracle(fu, f1, f2, upper=True, samples=samples,
                                               seed=seed) == 0
    return _finish(report)


# --------------------------------------------------------------------------
# Polygon checks
# --------------------------------------------------------------------------

def _turns_polygon(P: SimplePolygon) -> List[int]:
    vs = P.vertices
    n = len(vs)
    out = []
    for i in range(n):
        a, b, c = vs[i - 1], vs[i], vs[(i + 1) % n]
        cr = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)
        out.append(1 if cr > 0 else -1)
    return out


def _inside_arc(pos, start, end) -> bool:
    if start < end:
        return start < pos < end
    return pos > start or pos < end


def _vertex_position(i: int):
    return (i, 0)


def _boundary_position(P: SimplePolygon, p: Point):
    vs = P.vertices
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if p == a:
            return (i, 0)
        if p != b and on_segment(p, a, b):
            return (i, Fraction(p.x - a.x, 1) ** 2 + Fraction(p.y - a.y, 1) ** 2)
    return None


def _polygon_checks(report: InstanceReport, P0: SimplePolygon, decomp, pieces,
                    P1: SimplePolygon, P2: SimplePolygon, op: str) -> None:
    """Shared structural checks for one result polygon.

    For a union an arc is of the first kind when it holds a convex vertex of
    its owner and its witnesses are concave vertices of the other polygon;
    for an intersection both roles flip.
    """
    checks = report.checks
    cen1, cen2 = report.inputs
    cen0 = census_polygon(P0)
    polys = {Owner.FIRST: P1, Owner.SECOND: P2}
    turns = {o: _turns_polygon(P) for o, P in polys.items()}
    sign = 1 if op == "union" else -1
    t0 = _turns_polygon(P0)
    marked = {o: {v for v, t in zip(P.vertices, turns[o]) if t == sign} for o, P in polys.items()}
    checks["turn_subset"] = all(v in marked[Owner.FIRST] | marked[Owner.SECOND]
                                for v, t in zip(P0.vertices, t0) if t == sign)
    allowed = set(P1.vertices) | set(P2.vertices) | set(decomp.breakpoints)
    checks["vertex_subset"] = set(P0.vertices) <= allowed
    checks["pieces_on_owner"] = all(
        any(on_segment(p, a, b) and on_segment(q, a, b) for a, b in polys[lab].edges())
        for p, q, lab in pieces if lab is not None)

    k = decomp.k
    owners = decomp.owners
    if k == 0:
        x1 = y1 = x2 = y2 = 0
        checks["alternation"] = len(owners) == 1
        checks["arcs_disjoint"] = True
        checks["witness_vertex"] = True
    else:
        checks["alternation"] = k % 2 == 0 and all(owners[t] is not owners[(t + 1) % k]
                                                   for t in range(k))
        pos = {}
        for o, P in polys.items():
            pos[o] = [_boundary_position(P, b) for b in decomp.breakpoints]
        located = all(p is not None for o in pos for p in pos[o])
        disjoint = located
        if located:
            for o in polys:
                for t in range(k):
                    s, e = pos[o][t], pos[o][(t + 1) % k]
                    if any(_inside_arc(pos[o][u], s, e) for u in range(k) if u not in (t, (t + 1) % k)):
                        disjoint = False
        checks["arcs_disjoint"] = disjoint
        counts = {(o, has): 0 for o in Owner for has in (True, False)}
        witness_ok = located
        if located:
            for t in range(k):
                owner = owners[t]
                other = owner.other
                s, e = pos[owner][t], pos[owner][(t + 1) % k]
                own_arc = [i for i in range(polys[owner].n) if _inside_arc(_vertex_position(i), s, e)]
                has = any(turns[owner][i] == sign for i in own_arc)
                counts[owner, has] += 1
                if not has:
                    s, e = pos[other][t], pos[other][(t + 1) % k]
                    other_arc = [i for i in range(polys[other].n)
                                 if _inside_arc(_vertex_position(i), s, e)]
                    if not any(turns[other][i] == -sign for i in other_arc):
                        witness_ok = False
        checks["witness_vertex"] = witness_ok
        x1, y1 = counts[Owner.FIRST, True], counts[Owner.FIRST, False]
        x2, y2 = counts[Owner.SECOND, True], counts[Owner.SECOND, False]
    if op == "union":
        stored = (decomp.k1c, decomp.k1r, decomp.k2c, decomp.k2r)
        caps = (cen1.c, cen2.c, cen2.r, cen1.r)
    else:
        stored = (decomp.k1r, decomp.k1c, decomp.k2r, decomp.k2c)
        caps = (cen1.r, cen2.r, cen2.c, cen1.c)
    checks["census_agrees"] = (x1, y1, x2, y2) == stored
    checks["equal_arc_counts"] = x1 + y1 == x2 + y2
    checks["arc_census_system"] = (checks["equal_arc_counts"] and x1 <= caps[0] and x2 <= caps[1]
                        and y1 <= caps[2] and y2 <= caps[3])
    checks["counting"] = cen0.n <= cen1.n + cen2.n + k - y1 - y2


def check_union_instance(P1: SimplePolygon, P2: SimplePolygon, *, seed=0,
                         samples: int = MEMBERSHIP_SAMPLES) -> InstanceReport:
    """Check the union bound and the counting machinery; unions that are
    not a single simple polygon are skipped with the status as reason."""
    cen1, cen2 = census_polygon(P1), census_polygon(P2)
    report = InstanceReport("union", seed, (cen1, cen2), None, None, ReportStatus.OK)
    try:
        res = polygon_union(P1, P2)
    except BoundaryDegenerate:
        report.status, report.reason = ReportStatus.SKIPPED, Status.BOUNDARY_DEGENERATE.value
        return report
    except LemmaViolation as exc:
        report.checks["witness_vertex"] = False
        report.reason = str(exc)
        return _finish(report)
    if res.status is not Status.SIMPLE:
        report.status, report.reason = ReportStatus.SKIPPED, res.status.value
        rings = list(res.components) + list(res.holes)
        report.checks["oracle"] = membership_oracle(P1, P2, rings, "union",
                                                    samples=samples, seed=seed) == 0
        if not report.checks["oracle"]:
            report.status = ReportStatus.VIOLATION
        return report
    P0 = res.polygon
    cen0 = census_polygon(P0)
    report.output = cen0
    report.bound = union_bound(cen1.n, cen1.c, cen2.n, cen2.c).n_bound
    report.checks["bound"] = cen0.n <= report.bound
    report.checks["convex_count"] = cen0.c <= cen1.c + cen2.c
    _polygon_checks(report, P0, res.decomposition, res.pieces[0], P1, P2, "union")
    report.checks["oracle"] = membership_oracle(P1, P2, [P0], "union", samples=samples,
                                                seed=seed) == 0
    return _finish(report)


def _intersection_reports(P1, P2, seed, samples):
    cen1, cen2 = census_polygon(P1), census_polygon(P2)
    try:
        res = polygon_intersection(P1, P2)
    except BoundaryDegenerate:
        rep = InstanceReport("intersection", seed, (cen1, cen2), None, None, ReportStatus.SKIPPED,
                             reason=Status.BOUNDARY_DEGENERATE.value)
        return [], rep, True
    except LemmaViolation as exc:
        rep = InstanceReport("intersection", seed, (cen1, cen2), None, None, ReportStatus.OK,
                             checks={"witness_vertex": False}, reason=str(exc))
        return [], _finish(rep), True
    oracle_ok = membership_oracle(P1, P2, res.components, "intersection", samples=samples,
                                  seed=seed) == 0
    bound = intersection_bound(cen1.n, cen1.r, cen2.n, cen2.r).n_bound
    reports = []
    for P0, decomp, pieces in zip(res.components, res.decompositions, res.pieces):
        cen0 = census_polygon(P0)
        rep = InstanceReport("intersection", seed, (cen1, cen2), cen0, bound, ReportStatus.OK)
        rep.checks["bound"] = cen0.n <= bound
        rep.checks["concave_count"] = cen0.r <= cen1.r + cen2.r
        _polygon_checks(rep, P0, decomp, pieces, P1, P2, "intersection")
        rep.checks["oracle"] = oracle_ok
        reports.append(_finish(rep))
    return reports, None, oracle_ok


def check_intersection_instance(P1: SimplePolygon, P2: SimplePolygon, *, seed=0,
                                samples: int = MEMBERSHIP_SAMPLES) -> List[InstanceReport]:
    """One report per connected component of the intersection; an empty
    intersection gives an empty list."""
    reports, special, _ = _intersection_reports(P1, P2, seed, samples)
    if special is not None:
        return [special]
    return reports


# --------------------------------------------------------------------------
# Campaigns
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CampaignConfig:
    kind: str
    trials: int
    seed: int = 0
    n_min: int = 0
    n_max: int = 8
    workers: int = 1
    extremal_every: int = 0
    samples: Optional[int] = None


@dataclass
class CampaignSummary:
    kind: str
    trials: int
    ok: int
    skipped: int
    violations: int
    slack_histogram: Dict[int, int]
    min_slack: Optional[int]
    min_slack_witnesses: List[int]
    skip_reasons: Dict[str, int]
    reports: List[InstanceReport] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind, "trials": self.trials, "ok": self.ok, "skipped": self.skipped,
            "violations": self.violations,
            "slack_histogram": {str(k): v for k, v in sorted(self.slack_histogram.items())},
            "min_slack": self.min_slack, "min_slack_witnesses": self.min_slack_witnesses,
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
        }


def trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def _extremal_instance(kind: str, rng: random.Random):
    from . import constructions
    if kind == "envelope":
        args = [rng.randint(0, 3) for _ in range(4)]
        f1, f2, _ = constructions.build_envelope_extremal(*args)
        return f1, f2
    if kind == "union":
        args = [rng.randint(3, 5), rng.randint(3, 5), rng.randint(0, 2), rng.randint(0, 2)]
        P1, P2, _ = constructions.build_union_extremal(*args)
        return P1, P2
    args = [rng.randint(0, 3), rng.randint(0, 3), rng.randint(3, 5), rng.randint(3, 5)]
    P1, P2, _ = constructions.build_intersection_extremal(*args)
    return P1, P2


def _usable_sizes(kind: str, config: CampaignConfig) -> Tuple[int, int]:
    lo = config.n_min if kind == "envelope" else max(3, config.n_min)
    return lo, max(lo, config.n_max)


def envelope_profile(trial: int, lo: int, hi: int):
    """Census pair for an envelope trial; consecutive trials sweep every
    profile ((n1, c1), (n2, c2)) with lo <= n_i <= hi."""
    singles = [(n, c) for n in range(lo, hi + 1) for c in range(n + 1)]
    i, j = divmod(trial % (len(singles) ** 2), len(singles))
    return singles[i], singles[j]


def run_trial(config: CampaignConfig, trial: int) -> InstanceReport:
    """Generate and check trial number ``trial``; depends only on the
    campaign seed and the trial index."""
    s = trial_seed(config.seed, trial)
    rng = random.Random(s)
    kind = config.kind
    lo, hi = _usable_sizes(kind, config)
    extremal = config.extremal_every and trial % config.extremal_every == 0
    if extremal:
        a, b = _extremal_instance(kind, rng)
    elif kind == "envelope":
        (n1, c1), (n2, c2) = envelope_profile(trial, lo, hi)
        a = random_plf(rng.getrandbits(64), n1, c1)
        b = random_plf(rng.getrandbits(64), n2, c2)
    else:
        a = random_polygon(rng.getrandbits(64), rng.randint(lo, hi))
        b = random_polygon(rng.getrandbits(64), rng.randint(lo, hi))
    samples = config.samples
    if kind == "envelope":
        rep = check_envelope_instance(a, b, seed=s, samples=samples or ENVELOPE_SAMPLES)
    elif kind == "union":
        rep = check_union_instance(a, b, seed=s, samples=samples or MEMBERSHIP_SAMPLES)
    elif kind == "intersection":
        rep = _combine_intersection(a, b, s, samples or MEMBERSHIP_SAMPLES)
    else:
        raise ValueError(f"unknown campaign kind {kind!r}")
    rep.trial = trial
    rep.source = "extremal" if extremal else "random"
    return rep


def _combine_intersection(P1, P2, seed, samples) -> InstanceReport:
    """Fold the per-component reports of one trial into a single report
    carrying the tightest component."""
    reports, special, oracle_ok = _intersection_reports(P1, P2, seed, samples)
    if special is not None:
        return special
    cen1, cen2 = census_polygon(P1), census_polygon(P2)
    if not reports:
        rep = InstanceReport("intersection", seed, (cen1, cen2), None, None, ReportStatus.SKIPPED,
                             reason=Status.EMPTY.value, checks={"oracle": oracle_ok})
        if not oracle_ok:
            rep.status = ReportStatus.VIOLATION
        return rep
    best = min(reports, key=lambda r: r.slack)
    checks = {}
    for r in reports:
        for name, ok in r.checks.items():
            checks[name] = checks.get(name, True) and ok
    best.checks = checks
    if len(reports) > 1:
        best.reason = best.reason or f"{len(reports)} components"
    best.status = ReportStatus.OK
    return _finish(best)


def summarize(kind: str, reports: Sequence[InstanceReport]) -> CampaignSummary:
    reports = sorted(reports, key=lambda r: r.trial)
    hist: Counter = Counter()
    skips: Counter = Counter()
    ok = skipped = violations = 0
    for r in reports:
        if r.status is ReportStatus.OK:
            ok += 1
        elif r.status is ReportStatus.SKIPPED:
            skipped += 1
            skips[r.reason] += 1
        else:
            violations += 1
        if r.status is not ReportStatus.SKIPPED and r.slack is not None:
            hist[r.slack] += 1
    min_slack = min(hist) if hist else None
    witnesses = [r.trial for r in reports
                 if r.status is not ReportStatus.SKIPPED and r.slack == min_slack][:10]
    return CampaignSummary(kind, len(reports), ok, skipped, violations, dict(hist), min_slack,
                           witnesses, dict(skips), list(reports))


def _run_chunk(args):
    config, trials = args
    return [run_trial(config, t) for t in trials]


def run_campaign(config: CampaignConfig) -> CampaignSummary:
    if config.trials < 1:
        raise ValueError("a campaign needs at least one trial")
    if config.kind not in ("envelope", "union", "intersection"):
        raise ValueError(f"unknown campaign kind {config.kind!r}")
    if config.workers <= 1:
        reports = [run_trial(config, t) for t in range(config.trials)]
    else:
        chunks = [(config, range(i, config.trials, config.workers)) for i in range(config.workers)]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            reports = [r for chunk in pool.map(_run_chunk, chunks) for r in chunk]
    return summarize(config.kind, reports)
