import pytest
from hypothesis import given, settings, strategies as st

from pwlgeom.bounds import envelope_bound, intersection_bound, union_bound
from pwlgeom.constructions import (InfeasibleParams, build_envelope_extremal, build_intersection_extremal,
                                   build_union_extremal)
from pwlgeom.plf import census, lower_envelope
from pwlgeom.polygon import Status, census_polygon, polygon_intersection, polygon_union


def envelope_n0(c1, c2, r1, r2):
    f1, f2, trace = build_envelope_extremal(c1, c2, r1, r2)
    assert census(f1) == (c1 + r1, c1, r1) and census(f2) == (c2 + r2, c2, r2)
    f0, dec = lower_envelope(f1, f2)
    return census(f0), dec, trace


def test_envelope_examples():
    cen, dec, _ = envelope_n0(1, 1, 0, 0)
    assert cen.n == 5 == envelope_bound(1, 1, 1, 1).n_bound and dec.k == 3
    cen, dec, _ = envelope_n0(0, 0, 0, 0)
    assert cen.n == 1 and dec.k == 1
    cen, _, trace = envelope_n0(2, 3, 1, 2)
    assert cen.n == 14 == trace.expected_n0 and cen.c == 5


def test_envelope_swaps_roles():
    f1, f2, trace = build_envelope_extremal(3, 1, 0, 2)
    assert census(f1) == (3, 3, 0) and census(f2) == (3, 1, 2)
    f0, _ = lower_envelope(f1, f2)
    assert census(f0).n == envelope_bound(3, 3, 3, 1).n_bound
    assert trace.params == {"c1": 3, "c2": 1, "r1": 0, "r2": 2}


def union_n0(c1, c2, r1, r2):
    P1, P2, trace = build_union_extremal(c1, c2, r1, r2)
    assert census_polygon(P1) == (c1 + r1, c1, r1) and census_polygon(P2) == (c2 + r2, c2, r2)
    res = polygon_union(P1, P2)
    assert res.status is Status.SIMPLE
    return census_polygon(res.polygon)


def test_union_examples():
    assert union_n0(3, 3, 0, 0) == (12, 6, 6)
    assert union_n0(3, 4, 0, 1).n == 15 == union_bound(3, 3, 5, 4).n_bound
    assert union_n0(3, 3, 2, 2).n == 16 == union_bound(5, 3, 5, 3).n_bound


def test_union_rejects_small_convex_count():
    with pytest.raises(InfeasibleParams):
        build_union_extremal(2, 3, 0, 0)


@pytest.mark.parametrize("args, n0, case, extra", [
    ((0, 0, 3, 3), 6, "r2=r1", 5),
    ((1, 2, 3, 3), 12, "r2=r1+1", 5),
    ((1, 3, 3, 3), None, "r2=r1+2", 7),
    ((0, 3, 3, 3), 12, "r2>=r1+3", 9),
])
def test_intersection_examples(args, n0, case, extra):
    r1, r2, c1, c2 = args
    P1, P2, trace = build_intersection_extremal(*args)
    assert census_polygon(P1) == (c1 + r1, c1, r1) and census_polygon(P2) == (c2 + r2, c2, r2)
    res = polygon_intersection(P1, P2)
    assert res.status is Status.SIMPLE
    cen = census_polygon(res.polygon)
    bound = intersection_bound(r1 + c1, r1, r2 + c2, r2).n_bound
    assert cen.n == bound and cen.r == r1 + r2
    if n0 is not None:
        assert cen.n == n0
    assert trace.auxiliary["case"] == case
    assert trace.auxiliary["additional_vertices"] == extra


@settings(max_examples=20)
@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 4), st.integers(0, 4))
def test_envelope_always_tight(c1, c2, r1, r2):
    cen, _, trace = envelope_n0(c1, c2, r1, r2)
    assert cen.n == trace.expected_n0 and cen.c == c1 + c2
