"""Estimator: bisection bounds, determinism, region reports."""

import math

import pytest

from cmpk import estimator, spaces

PI = math.pi


def test_sphere_bounds_bracket_unit_curvature():
    sp = spaces.make_sphere(1.0)
    est = estimator.estimate_bounds(sp, sp.default_center(), 0.2, n_samples=120, seed=3)
    assert est.k_cbb is not None and abs(est.k_cbb - 1.0) <= 0.05
    assert est.k_cba is not None and abs(est.k_cba - 1.0) <= 0.05
    assert est.k_cbb <= est.k_cba + est.resolution


def test_plane_bounds_near_zero():
    sp = spaces.make_euclidean_plane()
    est = estimator.estimate_bounds(sp, sp.default_center(), 0.2, n_samples=120, seed=3)
    assert abs(est.k_cbb) <= 0.05 and abs(est.k_cba) <= 0.05


def test_hyperbolic_bounds_near_minus_one():
    sp = spaces.make_hyperbolic(-1.0)
    est = estimator.estimate_bounds(sp, sp.default_center(), 0.2, n_samples=120, seed=3)
    assert abs(est.k_cbb + 1.0) <= 0.05 and abs(est.k_cba + 1.0) <= 0.05


def test_bisection_soundness_on_fixed_samples():
    sp = spaces.make_sphere(1.0)
    ms = estimator.sample_measurements(sp, sp.default_center(), 0.2, ("pythagorean",), 80, 5)
    est = estimator.estimate_bounds(
        sp, sp.default_center(), 0.2, measurements=ms, n_samples=80, seed=5
    )
    from cmpk.config import DEFAULT_TOL

    assert estimator._orientation_pass(ms, est.k_cbb, "cbb", DEFAULT_TOL)
    assert not estimator._orientation_pass(ms, est.k_cbb + est.resolution, "cbb", DEFAULT_TOL)
    assert estimator._orientation_pass(ms, est.k_cba, "cba", DEFAULT_TOL)
    assert not estimator._orientation_pass(ms, est.k_cba - est.resolution, "cba", DEFAULT_TOL)


def test_estimates_deterministic_for_fixed_seed():
    sp = spaces.make_sphere(1.0)
    a = estimator.estimate_bounds(sp, sp.default_center(), 0.2, n_samples=40, seed=9)
    b = estimator.estimate_bounds(sp, sp.default_center(), 0.2, n_samples=40, seed=9)
    assert a == b
    c = estimator.estimate_bounds(sp, sp.default_center(), 0.2, n_samples=40, seed=10)
    assert c.cbb_residual != a.cbb_residual


def test_criterion_sets_agree_on_sphere():
    sp = spaces.make_sphere(1.0)
    kw = dict(n_samples=40, seed=4, resolution=0.01)
    by_pyth = estimator.estimate_bounds(sp, sp.default_center(), 0.2, criteria_set=("pythagorean",), **kw)
    by_tri = estimator.estimate_bounds(sp, sp.default_center(), 0.2, criteria_set=("triangle",), **kw)
    by_seg = estimator.estimate_bounds(sp, sp.default_center(), 0.2, criteria_set=("point-segment",), **kw)
    for other in (by_tri, by_seg):
        assert abs(by_pyth.k_cbb - other.k_cbb) <= 2 * 0.01 + 1e-12
        assert abs(by_pyth.k_cba - other.k_cba) <= 2 * 0.01 + 1e-12


def test_tripod_has_no_lower_bound_and_cba_never_fails():
    tri = spaces.make_tripod()
    est = estimator.estimate_bounds(tri, (0, 0.0), 0.5, n_samples=40, seed=3)
    assert est.k_cbb is None and "no pass endpoint" in est.cbb_note
    assert est.k_cba is None and "no fail endpoint" in est.cba_note


def test_unknown_criterion_rejected():
    sp = spaces.make_euclidean_plane()
    with pytest.raises(ValueError):
        estimator.estimate_bounds(sp, sp.default_center(), 0.2, criteria_set=("bogus",))


def test_noise_floor_is_tiny():
    floor = estimator.estimate_profile_noise_floor((0.2, 0.1, 0.05), 16, 2)
    assert floor <= 1e-10


def test_region_report_cone_apex_vs_off_apex():
    cone = spaces.make_cone(PI)
    rows = estimator.region_report(
        cone, [(0.0, 0.0), (1.0, 0.5)], 0.25,
        n_samples=30, seed=6, n_per_eps=128, probe_pairs=50,
    )
    apex, off = rows
    assert apex["profile"]["classification"] == "non_vanishing"
    assert off["profile"]["classification"] == "vanishing"
    # flat away from the apex: both bounds near zero
    assert abs(off["estimate"]["k_cbb"]) <= 0.05
    assert abs(off["estimate"]["k_cba"]) <= 0.05
    # the apex region carries tie pairs on the cut locus occasionally; the
    # row structure must be intact either way
    assert {"index", "center", "multiplicity"} <= set(apex)


def test_region_report_records_errors_and_continues():
    tri = spaces.make_tripod()
    rows = estimator.region_report(
        tri, [(0, 0.0), (0, 3.0)], 0.4, n_samples=10, seed=2, n_per_eps=8, probe_pairs=20
    )
    assert len(rows) == 2
    # branch-point region: estimate exists but has no finite bounds
    assert rows[0]["estimate"]["k_cbb"] is None
    # profile skipped everywhere on a tripod
    assert rows[0]["profile"]["classification"] == "inconclusive"


def test_sphere_region_report_profiles_vanish():
    sp = spaces.make_sphere(1.0)
    rows = estimator.region_report(
        sp, [sp.default_center()], 0.2, n_samples=20, seed=6, n_per_eps=32, probe_pairs=30
    )
    assert rows[0]["profile"]["classification"] == "vanishing"
    assert abs(rows[0]["estimate"]["k_cbb"] - 1.0) <= 0.05