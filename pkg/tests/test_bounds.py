import pytest
from hypothesis import given, strategies as st

from pwlgeom.bounds import (Branch, InvalidCensus, envelope_bound, envelope_bound_free, grid_maximize,
                            intersection_bound, intersection_bound_free, union_bound, union_bound_free,
                            union_bound_free_ceil, union_bound_free_floor, union_free_report)


@pytest.mark.parametrize("args, n, sec", [((0, 0, 0, 0), 1, 0), ((1, 1, 1, 1), 5, 2), ((2, 1, 3, 2), 9, 3)])
def test_envelope_bound_examples(args, n, sec):
    rep = envelope_bound(*args)
    assert (rep.n_bound, rep.secondary_bound) == (n, sec)


def test_union_and_intersection_examples():
    assert union_bound(3, 3, 3, 3).n_bound == 12
    assert union_bound(4, 3, 5, 4).n_bound == 16
    assert union_bound(3, 3, 100, 3).n_bound == 109
    rep = intersection_bound(3, 0, 3, 0)
    assert (rep.n_bound, rep.secondary_bound) == (6, 0)
    rep = intersection_bound(6, 2, 7, 3)
    assert (rep.n_bound, rep.secondary_bound) == (18, 5)
    assert intersection_bound(4, 1, 4, 1).n_bound == 10


def test_free_examples():
    assert [envelope_bound_free(3, 3), envelope_bound_free(0, 0), envelope_bound_free(2, 5)] == [13, 1, 14]
    assert [union_bound_free(3, 3), union_bound_free(3, 4), union_bound_free(6, 6)] == [12, 13, 24]
    assert [intersection_bound_free(3, 3), intersection_bound_free(6, 6),
            intersection_bound_free(4, 9)] == [6, 18, 19]


def test_grid_examples():
    g = grid_maximize("envelope", 3, 3)
    assert g.max_value == 13 and (3, 3) in g.argmax
    assert grid_maximize("union", 3, 4).max_value == 13
    g = grid_maximize("intersection", 3, 3)
    assert g.max_value == 6 and g.argmax == [(0, 0)]


def test_union_free_floor_overshoots_on_odd_gap():
    rep = union_free_report(3, 4)
    assert (rep.grid_value, rep.floor_form, rep.ceil_form, rep.matches) == (13, 14, 13, "ceil")
    assert union_free_report(3, 5).matches == "both"


@pytest.mark.parametrize("fn, args", [
    (envelope_bound, (1, 2, 1, 1)), (envelope_bound, (-1, 0, 0, 0)),
    (union_bound, (3, 2, 3, 3)), (intersection_bound, (3, 1, 3, 0))])
def test_invalid_census(fn, args):
    with pytest.raises(InvalidCensus):
        fn(*args)


def test_branch_reporting():
    assert envelope_bound(1, 1, 1, 1).which_branch is Branch.SECOND_MIN
    assert union_bound(3, 3, 3, 3).which_branch is Branch.TIE
    assert union_bound(3, 3, 100, 3).which_branch is Branch.SECOND_MIN
    assert union_bound(5, 5, 5, 3).params == (5, 3, 5, 5)


counts = st.integers(0, 12)


@given(counts, counts, counts, counts)
def test_envelope_bound_symmetric(n1, a, n2, b):
    c1, c2 = min(a, n1), min(b, n2)
    assert envelope_bound(n1, c1, n2, c2).n_bound == envelope_bound(n2, c2, n1, c1).n_bound


@given(st.integers(0, 40), st.integers(0, 40))
def test_envelope_free_equals_grid(n1, n2):
    assert grid_maximize("envelope", n1, n2).max_value == envelope_bound_free(n1, n2)


@given(st.integers(3, 40), st.integers(3, 40))
def test_polygon_free_forms(n1, n2):
    assert grid_maximize("intersection", n1, n2).max_value == intersection_bound_free(n1, n2)
    assert union_bound_free(n1, n2) == union_bound_free_ceil(n1, n2)
    assert union_bound_free_floor(n1, n2) - union_bound_free_ceil(n1, n2) == abs(n1 - n2) % 2
