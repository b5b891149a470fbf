import pytest
from hypothesis import given, strategies as st

from pwlgeom.geom import point
from pwlgeom.polygon import (BoundaryDegenerate, CollinearVertex, DuplicatePoint, Location, SelfIntersecting,
                             Status, TooFewVertices, census_polygon, contains_point, polygon_intersection,
                             polygon_new, polygon_union)
from pwlgeom.verifier import membership_oracle, random_polygon


def poly(*coords):
    return polygon_new([point(x, y) for x, y in coords])


TRI = poly((0, 0), (4, 0), (2, 3))
TRI2 = poly((0, 2), (4, 2), (2, -1))
SQ = poly((0, 0), (1, 0), (1, 1), (0, 1))
SQ_FAR = poly((10, 0), (11, 0), (11, 1), (10, 1))
BIG = poly((-2, -2), (3, -2), (3, 3), (-2, 3))


def test_constructor_examples():
    assert census_polygon(TRI) == (3, 3, 0)
    with pytest.raises(CollinearVertex):
        poly((0, 0), (2, 0), (4, 0), (2, 3))
    with pytest.raises(SelfIntersecting):
        poly((0, 0), (2, 2), (2, 0), (0, 2))
    with pytest.raises(TooFewVertices):
        poly((0, 0), (1, 0))
    with pytest.raises(DuplicatePoint):
        poly((0, 0), (1, 0), (0, 0), (0, 1))


def test_clockwise_input_is_reoriented():
    P = poly((0, 0), (2, 3), (4, 0))
    assert P.area2() > 0 and P.vertices[0] == point(0, 0)


def test_census_examples():
    assert census_polygon(poly((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2))) == (6, 5, 1)


def test_contains_point_examples():
    assert contains_point(TRI, point(2, 1)) is Location.INTERIOR
    assert contains_point(TRI, point(2, 0)) is Location.BOUNDARY
    assert contains_point(TRI, point(5, 5)) is Location.EXTERIOR


def test_hexagram_union():
    res = polygon_union(TRI, TRI2)
    assert res.status is Status.SIMPLE
    assert census_polygon(res.polygon) == (12, 6, 6)
    assert res.decomposition.k == 6
    assert membership_oracle(TRI, TRI2, res.components, "union", samples=10_000) == 0


def test_hexagram_intersection():
    res = polygon_intersection(TRI, TRI2)
    assert res.status is Status.SIMPLE
    assert census_polygon(res.polygon) == (6, 6, 0)
    assert res.decomposition.k == 6
    assert membership_oracle(TRI, TRI2, res.components, "intersection", samples=10_000) == 0


def test_disjoint_and_nested():
    assert polygon_union(SQ, SQ_FAR).status is Status.MULTIPLE_COMPONENTS
    empty = polygon_intersection(SQ, SQ_FAR)
    assert empty.status is Status.EMPTY and empty.components == ()
    res = polygon_union(SQ, BIG)
    assert res.status is Status.SIMPLE and res.polygon.vertices == BIG.vertices
    assert res.decomposition.k == 0
    res = polygon_intersection(SQ, BIG)
    assert res.polygon.vertices == SQ.vertices and res.decomposition.k == 0


def test_vertex_contact_is_degenerate():
    touching = poly((1, 1), (2, 0), (2, 2))  # vertex (1,1) is a corner of SQ
    with pytest.raises(BoundaryDegenerate):
        polygon_union(SQ, touching)
    assert polygon_union(SQ, touching, strict=False).status is Status.BOUNDARY_DEGENERATE


def test_shared_edge_overlap():
    right = poly((1, 0), (2, 0), (2, 1), (1, 1))
    res = polygon_union(SQ, right)
    assert res.status is Status.SIMPLE
    assert sorted(res.polygon.vertices) == sorted(point(x, y) for x, y in ((0, 0), (2, 0), (2, 1), (0, 1)))


def test_union_with_hole():
    u = poly((0, 0), (6, 0), (6, 6), (0, 6), (0, 5), (5, 5), (5, 1), (0, 1))
    bar = poly((-1, -1), (2, -1), (2, 7), (-1, 7))
    res = polygon_union(u, bar)
    assert res.status is Status.HAS_HOLE and len(res.holes) == 1


seeds = st.integers(0, 2**32)
sizes = st.integers(3, 9)


@given(seeds, sizes)
def test_random_polygon_valid(seed, n):
    P = random_polygon(seed, n)
    cen = census_polygon(P)
    assert cen.n == n and cen.c >= 3


@given(seeds, sizes, seeds, sizes)
def test_boolean_membership(s1, n1, s2, n2):
    P1, P2 = random_polygon(s1, n1), random_polygon(s2, n2)
    for op, fn in (("union", polygon_union), ("intersection", polygon_intersection)):
        res = fn(P1, P2, strict=False)
        if res.status is Status.BOUNDARY_DEGENERATE:
            continue
        rings = list(res.components) + list(res.holes)
        assert membership_oracle(P1, P2, rings, op, samples=64, seed=s1) == 0


@given(seeds, sizes, seeds, sizes)
def test_union_symmetric(s1, n1, s2, n2):
    P1, P2 = random_polygon(s1, n1), random_polygon(s2, n2)
    a, b = polygon_union(P1, P2, strict=False), polygon_union(P2, P1, strict=False)
    assert a.status is b.status
    assert sorted(v for C in a.components for v in C.vertices) == \
        sorted(v for C in b.components for v in C.vertices)
