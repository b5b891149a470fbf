import pytest
from hypothesis import given, strategies as st

from pwlgeom.constructions import build_envelope_extremal, build_intersection_extremal
from pwlgeom.geom import point
from pwlgeom.plf import census, line, plf_new
from pwlgeom.polygon import census_polygon, polygon_new
from pwlgeom.bounds import InvalidCensus
from pwlgeom.verifier import (CampaignConfig, ReportStatus, check_envelope_instance,
                              check_intersection_instance, check_union_instance, envelope_profile,
                              random_plf, random_polygon, run_campaign)


def poly(*coords):
    return polygon_new([point(x, y) for x, y in coords])


TRI = poly((0, 0), (4, 0), (2, 3))
TRI2 = poly((0, 2), (4, 2), (2, -1))
SQ = poly((0, 0), (1, 0), (1, 1), (0, 1))
SQ_FAR = poly((10, 0), (11, 0), (11, 1), (10, 1))
BIG = poly((-2, -2), (3, -2), (3, 3), (-2, 3))


def test_random_plf_examples():
    f = random_plf(5, 0, 0)
    assert census(f) == (0, 0, 0)
    v = random_plf(5, 1, 1)
    assert census(v) == (1, 1, 0)
    assert census(random_plf(42, 5, 2)) == (5, 2, 3)
    with pytest.raises(InvalidCensus):
        random_plf(0, 2, 3)


def test_random_polygon_examples():
    assert census_polygon(random_polygon(1, 3)) == (3, 3, 0)
    assert census_polygon(random_polygon(1, 4)).c in (3, 4)
    assert random_polygon(7, 12).n == 12


def test_envelope_report_examples():
    r = check_envelope_instance(line(1, point(0, 0)), line(-1, point(0, 0)))
    assert r.status is ReportStatus.OK and r.slack == 0 and r.output.n == 1
    r = check_envelope_instance(plf_new([point(0, 0)], -1, 1), plf_new([point(2, 0)], -1, 1))
    assert r.status is ReportStatus.OK and r.slack == 2 and r.bound == 5
    f1, f2, _ = build_envelope_extremal(1, 1, 0, 0)
    r = check_envelope_instance(f1, f2)
    assert r.status is ReportStatus.OK and r.slack == 0


def test_union_report_examples():
    r = check_union_instance(TRI, TRI2)
    assert r.status is ReportStatus.OK and r.slack == 0 and r.output.n == 12
    r = check_union_instance(SQ, SQ_FAR)
    assert r.status is ReportStatus.SKIPPED and r.reason == "multiple_components"
    r = check_union_instance(SQ, BIG)
    assert r.status is ReportStatus.OK and r.output.n == 4 and r.slack == r.bound - 4


def test_intersection_report_examples():
    reps = check_intersection_instance(TRI, TRI2)
    assert len(reps) == 1 and reps[0].status is ReportStatus.OK and reps[0].slack == 0
    assert check_intersection_instance(SQ, SQ_FAR) == []
    P1, P2, _ = build_intersection_extremal(0, 0, 3, 3)
    reps = check_intersection_instance(P1, P2)
    assert len(reps) == 1 and reps[0].slack == 0


def test_envelope_profiles_sweep_everything():
    seen = {envelope_profile(t, 0, 3) for t in range(100)}
    assert len(seen) == 100 and ((3, 3), (0, 0)) in seen


def test_campaign_examples():
    s = run_campaign(CampaignConfig("envelope", 1000, seed=1, n_max=8))
    assert s.violations == 0 and s.trials == s.ok + s.skipped + s.violations
    s = run_campaign(CampaignConfig("union", 500, seed=2, n_max=10))
    assert s.violations == 0 and s.trials == 500
    s = run_campaign(CampaignConfig("intersection", 500, seed=3, n_max=10))
    assert s.violations == 0


def test_campaign_deterministic_across_workers():
    cfg = CampaignConfig("union", 24, seed=9, n_max=7)
    a = run_campaign(cfg)
    b = run_campaign(cfg)
    c = run_campaign(CampaignConfig("union", 24, seed=9, n_max=7, workers=2))
    assert a == b == c


def test_extremal_trials_are_tight():
    for kind in ("envelope", "union", "intersection"):
        s = run_campaign(CampaignConfig(kind, 12, seed=4, extremal_every=3))
        assert s.violations == 0
        tight = [r for r in s.reports if r.source == "extremal"]
        assert len(tight) == 4 and all(r.slack == 0 for r in tight)


def test_bad_campaign_config():
    with pytest.raises(ValueError):
        run_campaign(CampaignConfig("envelope", 0))
    with pytest.raises(ValueError):
        run_campaign(CampaignConfig("sphere", 3))


@given(st.integers(0, 2**32), st.integers(0, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_generator_exact(seed, prof):
    assert census(random_plf(seed, *prof)) == (prof[0], prof[1], prof[0] - prof[1])
