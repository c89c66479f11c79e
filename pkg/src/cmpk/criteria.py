"""Curvature-bound criteria as executable predicates with quantified defects.

Each test reports two oriented defects: ``cbb_defect`` (amount by which the
lower-bound inequality is violated) and ``cba_defect`` (same for the upper
bound); a claim passes when its defect is at most the scale-aware tolerance.
Measurement (all metric probing of the space) is separated from evaluation
(model-kernel work at a given k) so that k-sweeps reuse one probed
configuration set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from cmpk import model
from cmpk.config import DEFAULT_TOL, Tolerances
from cmpk.errors import (
    DegenerateConfigError,
    DegenerateRegionError,
    FootOnBoundary,
    LadderError,
    RightAngleUnavailable,
    ShootUnavailable,
)
from cmpk.spaces import GeodesicSegment, GeodesicSpace

PI = math.pi
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def verdict_from_defects(cbb_defect: float, cba_defect: float, tol: float) -> str:
    cbb_ok = cbb_defect <= tol
    cba_ok = cba_defect <= tol
    if cbb_ok and cba_ok:
        return "pass_both"
    if cbb_ok:
        return "pass_CBB"
    if cba_ok:
        return "pass_CBA"
    return "fail"


@dataclass(frozen=True)
class TestOutcome:
    criterion: str
    k: float
    scale: float
    cbb_defect: float
    cba_defect: float
    tolerance: float
    verdict: str
    config: dict = field(default_factory=dict, repr=False)

    def passes(self, orientation: str) -> bool:
        if orientation == "cbb":
            return self.verdict in ("pass_CBB", "pass_both")
        if orientation == "cba":
            return self.verdict in ("pass_CBA", "pass_both")
        raise ValueError(f"orientation must be 'cbb' or 'cba', got {orientation!r}")


def _outcome(criterion, k, scale, cbb, cba, tol_cfg: Tolerances, tol, config) -> TestOutcome:
    tolerance = tol_cfg.verdict_tolerance(scale) if tol is None else tol
    return TestOutcome(
        criterion, k, scale, cbb, cba, tolerance,
        verdict_from_defects(cbb, cba, tolerance), config,
    )


# ---------------------------------------------------------------------------
# foot of perpendicular


@dataclass(frozen=True)
class FootResult:
    segment: GeodesicSegment = field(repr=False)
    t_star: float
    d_star: float
    interior: bool
    margin: float
    ties: tuple[float, ...] = ()

    @property
    def multiple(self) -> bool:
        return len(self.ties) > 0


def _golden(f, a: float, b: float, target: float) -> tuple[float, float]:
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > target:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _parabolic_polish(f, t: float, ft: float, lo: float, hi: float, h: float):
    """One guarded parabolic step; keeps t when the fit does not help.

    Distance-only golden section bottoms out at sqrt(eps)-level foot error;
    on smooth spaces the parabola recovers ~eps^(2/3).  Kinked minima reject
    the fit through the value guard.
    """
    t1, t3 = t - h, t + h
    if t1 < lo or t3 > hi:
        return t, ft
    f1, f3 = f(t1), f(t3)
    denom = (t - t1) * (ft - f3) - (t - t3) * (ft - f1)
    if denom == 0.0:
        return t, ft
    tv = t - 0.5 * (((t - t1) ** 2) * (ft - f3) - ((t - t3) ** 2) * (ft - f1)) / denom
    if not (t1 <= tv <= t3):
        return t, ft
    fv = f(tv)
    noise = 4.0 * 2.2e-16 * (abs(ft) + (hi - lo))
    if fv <= ft + noise:
        return tv, fv
    return t, ft


def foot_of_perpendicular(
    space: GeodesicSpace,
    q,
    seg: GeodesicSegment,
    *,
    n_grid: int = 64,
    tol_cfg: Tolerances = DEFAULT_TOL,
) -> FootResult:
    """Global minimizer of distance(q, seg.at(t)) over the segment.

    Dense grid, golden-section refinement in each candidate bracket, then a
    guarded parabolic polish.  Raises FootOnBoundary when the minimizer sits
    within the interiorness margin of an endpoint.
    """
    L = seg.length
    if L <= 0.0:
        raise DegenerateConfigError("segment has zero length")

    def f(t: float) -> float:
        return space.distance(q, seg.at(t))

    ts = np.linspace(0.0, L, n_grid + 1)
    fs = np.array([f(t) for t in ts])
    order = int(np.argmin(fs))
    target = tol_cfg.foot_refine_rel * L
    h_polish = tol_cfg.foot_polish_rel * L

    def refine(i: int) -> tuple[float, float]:
        a = ts[max(i - 1, 0)]
        b = ts[min(i + 1, n_grid)]
        t_g, f_g = _golden(f, a, b, target)
        return _parabolic_polish(f, t_g, f_g, 0.0, L, h_polish)

    t_star, d_star = refine(order)
    if d_star <= tol_cfg.geo:
        raise DegenerateConfigError("q lies on the segment")
    margin = tol_cfg.foot_margin_rel * L
    if not margin <= t_star <= L - margin:
        raise FootOnBoundary(t_star, d_star, L)

    # other grid-separated local minima within the tie window
    ties = []
    for i in range(n_grid + 1):
        if i == order:
            continue
        left = fs[i - 1] if i > 0 else math.inf
        right = fs[i + 1] if i < n_grid else math.inf
        if fs[i] <= left and fs[i] <= right and fs[i] <= d_star + 10.0 * tol_cfg.tie:
            t_i, f_i = refine(i)
            if f_i <= d_star + tol_cfg.tie and abs(t_i - t_star) > 2.0 * L / n_grid:
                ties.append(t_i)

    return FootResult(seg, t_star, d_star, True, margin, tuple(sorted(ties)))


# ---------------------------------------------------------------------------
# Pythagorean criterion at an interior foot


@dataclass(frozen=True)
class PythagoreanMeasurement:
    d_qp: float
    d_pr1: float
    d_qr1: float
    d_pr2: float
    d_qr2: float
    scale: float
    snapshot: dict = field(default_factory=dict, repr=False)


def measure_pythagorean(
    space: GeodesicSpace, q, seg: GeodesicSegment, *,
    tol_cfg: Tolerances = DEFAULT_TOL, foot: FootResult | None = None,
) -> PythagoreanMeasurement:
    if foot is None:
        foot = foot_of_perpendicular(space, q, seg, tol_cfg=tol_cfg)
    p = seg.at(foot.t_star)
    d_pr1 = space.distance(p, seg.start)
    d_pr2 = space.distance(p, seg.end)
    if min(d_pr1, d_pr2) < tol_cfg.geo:
        raise DegenerateConfigError("foot coincides with a segment endpoint")
    d_qr1 = space.distance(q, seg.start)
    d_qr2 = space.distance(q, seg.end)
    scale = max(d_qr1, d_qr2, seg.length)
    snapshot = {
        "q": space.point_to_data(q),
        "r1": space.point_to_data(seg.start),
        "r2": space.point_to_data(seg.end),
        "p": space.point_to_data(p),
        "t_star": foot.t_star,
        "d_star": foot.d_star,
        "foot_ties": len(foot.ties),
        "distances": {
            "d_qp": foot.d_star, "d_pr1": d_pr1, "d_qr1": d_qr1,
            "d_pr2": d_pr2, "d_qr2": d_qr2, "length": seg.length,
        },
    }
    return PythagoreanMeasurement(foot.d_star, d_pr1, d_qr1, d_pr2, d_qr2, scale, snapshot)


def evaluate_pythagorean(
    m: PythagoreanMeasurement, k: float, *,
    tol_cfg: Tolerances = DEFAULT_TOL, tol: float | None = None,
) -> TestOutcome:
    d1 = model.pythagorean_defect(k, m.d_qp, m.d_pr1, m.d_qr1, tol=tol_cfg)
    d2 = model.pythagorean_defect(k, m.d_qp, m.d_pr2, m.d_qr2, tol=tol_cfg)
    cbb = max(d1, d2)
    cba = max(-d1, -d2)
    config = dict(m.snapshot, defects=[d1, d2])
    return _outcome("pythagorean", k, m.scale, cbb, cba, tol_cfg, tol, config)


def pythagorean_test(
    space: GeodesicSpace, k: float, q, seg: GeodesicSegment, *,
    tol_cfg: Tolerances = DEFAULT_TOL, tol: float | None = None,
    foot: FootResult | None = None,
) -> TestOutcome:
    m = measure_pythagorean(space, q, seg, tol_cfg=tol_cfg, foot=foot)
    return evaluate_pythagorean(m, k, tol_cfg=tol_cfg, tol=tol)


# ---------------------------------------------------------------------------
# right-angle configurations and the right-angle Pythagorean test


@dataclass(frozen=True)
class RightAngleConfig:
    p: object
    q: object
    r: object
    d_pq: float
    d_pr: float
    d_qr: float
    angle_deviation: float  # |measured angle at p - pi/2|, radians

    @property
    def ratio_defect(self) -> float:
        """| d_qr^2 / (d_pq^2 + d_pr^2) - 1 |, the Riemannian-point quantity."""
        return abs(self.d_qr**2 / (self.d_pq**2 + self.d_pr**2) - 1.0)


RIGHT_ANGLE_TOL = 1e-6  # radians; mirrors the 1e-6 * leg construction budget


def build_right_angle_config(
    space: GeodesicSpace, p, dir_q: float, dir_r: float,
    leg1: float, leg2: float, *, tol_cfg: Tolerances = DEFAULT_TOL,
    angle_tol: float = RIGHT_ANGLE_TOL,
) -> RightAngleConfig:
    """Shoot two legs from p and verify that they enclose a right angle.

    Both legs must be minimal geodesics and the small-scale comparison-angle
    ladder at p must read pi/2 within `angle_tol`.  The angle is verified
    directly (rather than through a foot-of-perpendicular check) because a
    right angle need not arise as a foot: on a cone, the configurations that
    feel the apex are exactly those whose foot migrates to a segment
    endpoint through the wrapped side, while their angle at p is still
    honestly pi/2.
    """
    try:
        q = space.shoot(p, dir_q, leg1)
        r = space.shoot(p, dir_r, leg2)
    except ShootUnavailable as e:
        raise RightAngleUnavailable(str(e)) from e
    d_pq = space.distance(p, q)
    d_pr = space.distance(p, r)
    if d_pq < leg1 * (1.0 - 1e-9) or d_pr < leg2 * (1.0 - 1e-9):
        raise RightAngleUnavailable("shot leg is not a minimal geodesic")
    try:
        est = angle_at(space, p, space.geodesic(p, q), space.geodesic(p, r), 0.0, tol_cfg=tol_cfg)
    except LadderError as e:
        raise RightAngleUnavailable(f"angle ladder degenerate: {e}") from e
    deviation = abs(est.angle - PI / 2)
    if deviation > angle_tol:
        raise RightAngleUnavailable(
            f"angle at p deviates from pi/2 by {deviation:.3g} > {angle_tol:.1g}"
        )
    return RightAngleConfig(p, q, r, d_pq, d_pr, space.distance(q, r), deviation)


def right_angle_from_foot(
    space: GeodesicSpace, q, seg: GeodesicSegment, *,
    tol_cfg: Tolerances = DEFAULT_TOL, foot: FootResult | None = None,
    angle_tol: float = RIGHT_ANGLE_TOL,
) -> RightAngleConfig:
    """Right-angle configuration from an interior foot (shoot-free spaces).

    On lower-bounded spaces an interior foot is perpendicular to the
    segment, so (p=foot, q, r=segment end) encloses a right angle; the angle
    is still verified, since on upper-bound-type spaces a foot angle may
    exceed pi/2 (a tripod branch point reads pi).
    """
    if foot is None:
        foot = foot_of_perpendicular(space, q, seg, tol_cfg=tol_cfg)
    p = seg.at(foot.t_star)
    ahead = seg.subsegment(foot.t_star, seg.length)
    try:
        est = angle_at(space, p, space.geodesic(p, q), ahead, 0.0, tol_cfg=tol_cfg)
    except LadderError as e:
        raise RightAngleUnavailable(f"angle ladder degenerate: {e}") from e
    deviation = abs(est.angle - PI / 2)
    if deviation > angle_tol:
        raise RightAngleUnavailable(
            f"foot angle deviates from pi/2 by {deviation:.3g} > {angle_tol:.1g}"
        )
    d_pr = space.distance(p, seg.end)
    return RightAngleConfig(
        p, q, seg.end, foot.d_star, d_pr, space.distance(q, seg.end), deviation
    )


def right_angle_pythagorean_test(
    space: GeodesicSpace, k: float, p, dir_q: float, dir_r: float,
    leg1: float, leg2: float, *,
    tol_cfg: Tolerances = DEFAULT_TOL, tol: float | None = None,
) -> TestOutcome:
    cfg = build_right_angle_config(space, p, dir_q, dir_r, leg1, leg2, tol_cfg=tol_cfg)
    defect = model.pythagorean_defect(k, cfg.d_pq, cfg.d_pr, cfg.d_qr, tol=tol_cfg)
    scale = max(cfg.d_pq, cfg.d_pr, cfg.d_qr)
    config = {
        "p": space.point_to_data(cfg.p),
        "q": space.point_to_data(cfg.q),
        "r": space.point_to_data(cfg.r),
        "distances": {"d_pq": cfg.d_pq, "d_pr": cfg.d_pr, "d_qr": cfg.d_qr},
        "angle_deviation": cfg.angle_deviation,
    }
    return _outcome("right_angle", k, scale, defect, -defect, tol_cfg, tol, config)


# ---------------------------------------------------------------------------
# point-to-segment comparison (condition 1.1)


@dataclass(frozen=True)
class PointSegmentMeasurement:
    d_qp: float
    d_qr: float
    length: float
    probes: tuple[tuple[float, float], ...]  # (t, measured distance)
    scale: float
    snapshot: dict = field(default_factory=dict, repr=False)


def chebyshev_nodes(n: int, length: float) -> list[float]:
    """Interior Chebyshev points mapped to [0, length]."""
    return [
        0.5 * length * (1.0 - math.cos((2.0 * i - 1.0) * PI / (2.0 * n)))
        for i in range(1, n + 1)
    ]


def measure_point_segment(
    space: GeodesicSpace, q, seg: GeodesicSegment, n_probes: int = 9,
) -> PointSegmentMeasurement:
    d_qp = space.distance(q, seg.start)
    d_qr = space.distance(q, seg.end)
    probes = tuple((t, space.distance(q, seg.at(t))) for t in chebyshev_nodes(n_probes, seg.length))
    scale = max(d_qp, d_qr, seg.length)
    snapshot = {
        "q": space.point_to_data(q),
        "p": space.point_to_data(seg.start),
        "r": space.point_to_data(seg.end),
        "distances": {"d_qp": d_qp, "d_qr": d_qr, "length": seg.length},
    }
    return PointSegmentMeasurement(d_qp, d_qr, seg.length, probes, scale, snapshot)


def evaluate_point_segment(
    m: PointSegmentMeasurement, k: float, *,
    tol_cfg: Tolerances = DEFAULT_TOL, tol: float | None = None,
) -> TestOutcome:
    defects = [
        d_real - model.comparison_distance_at(k, m.d_qp, m.d_qr, m.length, t, tol=tol_cfg)
        for t, d_real in m.probes
    ]
    cbb = -min(defects)  # lower bound requires real >= model everywhere
    cba = max(defects)
    config = dict(m.snapshot, defects=defects)
    return _outcome("point_segment", k, m.scale, cbb, cba, tol_cfg, tol, config)


def point_segment_test(
    space: GeodesicSpace, k: float, q, seg: GeodesicSegment, n_probes: int = 9, *,
    tol_cfg: Tolerances = DEFAULT_TOL, tol: float | None = None,
) -> TestOutcome:
    m = measure_point_segment(space, q, seg, n_probes)
    return evaluate_point_segment(m, k, tol_cfg=tol_cfg, tol=tol)


# ---------------------------------------------------------------------------
# angle estimation by comparison-angle ladders


@dataclass(frozen=True)
class AngleEstimate:
    vertex: object
    toward: tuple[object, object]
    ladder: tuple[tuple[float, float], ...]  # (scale t_j, comparison angle)
    angle: float           # last-rung value
    extrapolated: float    # Richardson extrapolation of the last two rungs
    monotone: bool
    k0: float


def measure_angle_ladder(
    space: GeodesicSpace, p, toward_q: GeodesicSegment, toward_r: GeodesicSegment, *,
    t0: float | None = None, ratio: float = 0.5, rungs: int = 8,
    tol_cfg: Tolerances = DEFAULT_TOL,
) -> tuple[tuple[float, float, float, float], ...]:
    """Raw ladder of (t_j, |p a_j|, |p b_j|, |a_j b_j|)."""
    for seg in (toward_q, toward_r):
        if space.distance(seg.at(0.0), p) > 10.0 * tol_cfg.pt:
            raise ValueError("segment does not emanate from p")
    if t0 is None:
        t0 = 0.1 * min(toward_q.length, toward_r.length)
    if t0 <= 0.0:
        raise LadderError("zero-length segment")
    out = []
    for j in range(rungs):
        t = t0 * ratio**j
        a = toward_q.at(t)
        b = toward_r.at(t)
        d_pa = space.distance(p, a)
        d_pb = space.distance(p, b)
        if min(d_pa, d_pb) < 10.0 * tol_cfg.geo:
            raise LadderError(f"ladder distances degenerate at rung {j}")
        out.append((t, d_pa, d_pb, space.distance(a, b)))
    return tuple(out)


def evaluate_angle_ladder(
    raw: Sequence[tuple[float, float, float, float]], k0: float, *,
    tol_cfg: Tolerances = DEFAULT_TOL, vertex=None, toward=(None, None),
) -> AngleEstimate:
    ladder = tuple(
        (t, model.comparison_angle(k0, (d_pa, d_pb, d_ab), tol=tol_cfg))
        for t, d_pa, d_pb, d_ab in raw
    )
    values = [v for _, v in ladder]
    monotone = all(values[j + 1] >= values[j] - 1e-9 for j in range(len(values) - 1))
    angle = values[-1]
    if len(values) >= 2:
        r2 = (raw[-2][0] / raw[-1][0]) ** 2
        extrapolated = (r2 * values[-1] - values[-2]) / (r2 - 1.0)
        extrapolated = min(max(extrapolated, 0.0), PI)
    else:
        extrapolated = angle
    return AngleEstimate(vertex, toward, ladder, angle, extrapolated, monotone, k0)


def angle_at(
    space: GeodesicSpace, p, toward_q: GeodesicSegment, toward_r: GeodesicSegment,
    k0: float = 0.0, *, t0: float | None = None, ratio: float = 0.5, rungs: int = 8,
    tol_cfg: Tolerances = DEFAULT_TOL,
) -> AngleEstimate:
    """Angle between two segments at p as the small-scale comparison-angle limit."""
    raw = measure_angle_ladder(
        space, p, toward_q, toward_r, t0=t0, ratio=ratio, rungs=rungs, tol_cfg=tol_cfg
    )
    return evaluate_angle_ladder(
        raw, k0, tol_cfg=tol_cfg, vertex=space.point_to_data(p),
        toward=(space.point_to_data(toward_q.end), space.point_to_data(toward_r.end)),
    )


# ---------------------------------------------------------------------------
# triangle comparison (vertex-angle test)


@dataclass(frozen=True)
class TriangleMeasurement:
    sides: tuple[float, float, float]  # (d_qr, d_pr, d_pq): side opposite p, q, r
    ladders: dict  # vertex name -> list of raw ladders (one per geodesic combo)
    scale: float
    multi_geodesic: bool
    snapshot: dict = field(default_factory=dict, repr=False)


def measure_triangle(
    space: GeodesicSpace, p, q, r, *,
    tol_cfg: Tolerances = DEFAULT_TOL, rungs: int = 8,
) -> TriangleMeasurement:
    g_pq = space.minimal_geodesics(p, q)
    g_pr = space.minimal_geodesics(p, r)
    g_qr = space.minimal_geodesics(q, r)
    d_pq, d_pr, d_qr = g_pq[0].length, g_pr[0].length, g_qr[0].length
    if min(d_pq, d_pr, d_qr) <= 10.0 * tol_cfg.geo:
        raise DegenerateConfigError("triangle has a vanishing side")
    multi = max(len(g_pq), len(g_pr), len(g_qr)) > 1
    ladders = {"p": [], "q": [], "r": []}
    for ga in g_pq:
        for gb in g_pr:
            ladders["p"].append(measure_angle_ladder(space, p, ga, gb, rungs=rungs, tol_cfg=tol_cfg))
    for ga in g_pq:
        for gb in g_qr:
            ladders["q"].append(
                measure_angle_ladder(space, q, ga.reversed(), gb, rungs=rungs, tol_cfg=tol_cfg)
            )
    for ga in g_pr:
        for gb in g_qr:
            ladders["r"].append(
                measure_angle_ladder(space, r, ga.reversed(), gb.reversed(), rungs=rungs, tol_cfg=tol_cfg)
            )
    scale = max(d_pq, d_pr, d_qr)
    snapshot = {
        "p": space.point_to_data(p), "q": space.point_to_data(q), "r": space.point_to_data(r),
        "distances": {"d_pq": d_pq, "d_pr": d_pr, "d_qr": d_qr},
        "multi_geodesic": multi,
    }
    return TriangleMeasurement((d_qr, d_pr, d_pq), ladders, scale, multi, snapshot)


def evaluate_triangle(
    m: TriangleMeasurement, k: float, *,
    tol_cfg: Tolerances = DEFAULT_TOL, tol: float | None = None,
) -> TestOutcome:
    d_qr, d_pr, d_pq = m.sides
    model_angles = {
        "p": model.comparison_angle(k, (d_pq, d_pr, d_qr), tol=tol_cfg),
        "q": model.comparison_angle(k, (d_pq, d_qr, d_pr), tol=tol_cfg),
        "r": model.comparison_angle(k, (d_pr, d_qr, d_pq), tol=tol_cfg),
    }
    cbb = -math.inf
    cba = -math.inf
    estimates = {}
    for v, raws in m.ladders.items():
        angles = [evaluate_angle_ladder(raw, k, tol_cfg=tol_cfg).angle for raw in raws]
        estimates[v] = angles
        # lower bound needs angle >= model angle for every geodesic pair
        cbb = max(cbb, model_angles[v] - min(angles))
        cba = max(cba, max(angles) - model_angles[v])
    config = dict(m.snapshot, model_angles=model_angles, vertex_angles=estimates)
    return _outcome("triangle", k, m.scale, cbb, cba, tol_cfg, tol, config)


def triangle_comparison_test(
    space: GeodesicSpace, k: float, p, q, r, *,
    tol_cfg: Tolerances = DEFAULT_TOL, tol: float | None = None,
) -> TestOutcome:
    m = measure_triangle(space, p, q, r, tol_cfg=tol_cfg)
    return evaluate_triangle(m, k, tol_cfg=tol_cfg, tol=tol)


# ---------------------------------------------------------------------------
# first variation


@dataclass(frozen=True)
class FirstVariationReport:
    t_star: float
    angle: float
    target: float             # -cos(angle)
    steps: tuple[float, ...]
    slopes: tuple[float, ...]
    errors: tuple[float, ...]
    ratios: tuple[float, ...]  # successive error ratios; expected to decay
    multi_geodesic: bool = False  # ties make the tested direction one of several

    @property
    def decaying(self) -> bool:
        return all(r < 1.0 for r in self.ratios) if self.ratios else True


def first_variation_check(
    space: GeodesicSpace, q, seg: GeodesicSegment, t_star: float,
    steps: Sequence[float] = (1e-2, 1e-3, 1e-4), *,
    k0: float = 0.0, tol_cfg: Tolerances = DEFAULT_TOL,
) -> FirstVariationReport:
    """Forward finite-difference slope of t -> d(q, seg(t)) against -cos(angle)."""
    if t_star + max(steps) > seg.length:
        raise ValueError("t_star too close to the segment end for the step ladder")
    p = seg.at(t_star)
    geods = space.minimal_geodesics(p, q)
    forward = seg.subsegment(t_star, seg.length)
    est = angle_at(space, p, geods[0], forward, k0, tol_cfg=tol_cfg)
    target = -math.cos(est.angle)
    d0 = space.distance(q, p)
    slopes = tuple((space.distance(q, seg.at(t_star + h)) - d0) / h for h in steps)
    errors = tuple(abs(s - target) for s in slopes)
    ratios = tuple(
        errors[i + 1] / errors[i] if errors[i] > 0 else 0.0 for i in range(len(errors) - 1)
    )
    return FirstVariationReport(
        t_star, est.angle, target, tuple(steps), slopes, errors, ratios, len(geods) > 1
    )


# ---------------------------------------------------------------------------
# angle sums at an interior point of a segment


@dataclass(frozen=True)
class AngleSumReport:
    angle_r1: float
    angle_r2: float
    total: float
    excess: float  # total - pi; zero for lower-bounded spaces, >= 0 for upper
    t_interior: float
    multi_geodesic: bool


def angle_sum_check(
    space: GeodesicSpace, q, seg: GeodesicSegment, t_interior: float, *,
    k0: float = 0.0, tol_cfg: Tolerances = DEFAULT_TOL,
) -> AngleSumReport:
    if not 0.0 < t_interior < seg.length:
        raise ValueError("t_interior must be strictly inside the segment")
    p = seg.at(t_interior)
    geods = space.minimal_geodesics(p, q)
    toward_q = geods[0]
    back = seg.subsegment(t_interior, 0.0)
    ahead = seg.subsegment(t_interior, seg.length)
    a1 = angle_at(space, p, toward_q, back, k0, tol_cfg=tol_cfg).angle
    a2 = angle_at(space, p, toward_q, ahead, k0, tol_cfg=tol_cfg).angle
    return AngleSumReport(a1, a2, a1 + a2, a1 + a2 - PI, t_interior, len(geods) > 1)


# ---------------------------------------------------------------------------
# multiplicity probe


@dataclass(frozen=True)
class MultiplicityReport:
    n_pairs: int
    multi_pairs: int
    examples: tuple[dict, ...]


def geodesic_multiplicity_probe(
    space: GeodesicSpace, region: tuple, n_pairs: int, rng: np.random.Generator,
    extra_pairs: Sequence[tuple] = (),
) -> MultiplicityReport:
    """Count sampled point pairs joined by more than one minimal geodesic."""
    center, radius = region
    pairs = [
        (space.sample_ball(center, radius, rng), space.sample_ball(center, radius, rng))
        for _ in range(n_pairs)
    ]
    pairs.extend(extra_pairs)
    multi = 0
    examples = []
    for x, y in pairs:
        if space.distance(x, y) <= space.tol.pt:
            continue
        if len(space.minimal_geodesics(x, y)) > 1:
            multi += 1
            if len(examples) < 5:
                examples.append({"x": space.point_to_data(x), "y": space.point_to_data(y)})
    return MultiplicityReport(len(pairs), multi, tuple(examples))


# ---------------------------------------------------------------------------
# Riemannian-point defect profile


@dataclass(frozen=True)
class DefectProfile:
    eps_ladder: tuple[float, ...]
    chi: tuple[float, ...]
    skip_fraction: tuple[float, ...]
    n_per_eps: int
    seed: int
    threshold: float
    classification: str  # vanishing | non_vanishing | inconclusive

    def to_dict(self) -> dict:
        return {
            "eps_ladder": list(self.eps_ladder),
            "chi": list(self.chi),
            "skip_fraction": list(self.skip_fraction),
            "n_per_eps": self.n_per_eps,
            "seed": self.seed,
            "threshold": self.threshold,
            "classification": self.classification,
        }


def chi_at_scale(
    space: GeodesicSpace, x, eps: float, n: int, seed: int, *,
    tol_cfg: Tolerances = DEFAULT_TOL,
) -> tuple[float, int]:
    """Max squared-ratio defect over sampled right-angle configs in B_x(eps).

    All random draws are dimensionless and derived from the seed alone, so
    repeated calls with different eps probe geometrically similar configs.
    """
    rng = np.random.default_rng(seed)
    chi_max = 0.0
    skipped = 0
    for _ in range(n):
        omega = rng.uniform(0.0, 2.0 * PI)
        u = rng.uniform(0.1, 0.45)
        beta = rng.uniform(0.0, 2.0 * PI)
        l1 = eps * rng.uniform(0.1, 0.45)
        l2 = eps * rng.uniform(0.1, 0.45)
        try:
            try:
                p = space.shoot(x, omega, u * eps)
            except ShootUnavailable:
                p = space.sample_ball(x, 0.45 * eps, rng)
            cfg = build_right_angle_config(space, p, beta, beta + PI / 2, l1, l2, tol_cfg=tol_cfg)
        except RightAngleUnavailable:
            skipped += 1
            continue
        chi_max = max(chi_max, cfg.ratio_defect)
    return chi_max, skipped


def classify_profile(
    eps_ladder: Sequence[float], chi: Sequence[float], skip_fraction: Sequence[float],
    threshold: float,
) -> str:
    if any(s > 0.5 for s in skip_fraction[-2:]):
        return "inconclusive"
    v_prev, v_min = chi[-2], chi[-1]
    if v_min <= threshold or v_min <= 0.5 * v_prev:
        return "vanishing"
    if abs(v_min - v_prev) <= 0.2 * max(v_min, v_prev):
        return "non_vanishing"
    return "inconclusive"


def riemannian_point_profile(
    space: GeodesicSpace, x, eps_ladder: Sequence[float], n_per_eps: int, seed: int, *,
    noise_floor: float | None = None, tol_cfg: Tolerances = DEFAULT_TOL,
) -> DefectProfile:
    """Ladder of worst right-angle Pythagorean-ratio defects around x."""
    ladder = tuple(float(e) for e in eps_ladder)
    if len(ladder) < 2 or any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("eps ladder must be strictly decreasing with >= 2 rungs")
    chi, skips = [], []
    for eps in ladder:
        c, s = chi_at_scale(space, x, eps, n_per_eps, seed, tol_cfg=tol_cfg)
        chi.append(c)
        skips.append(s / n_per_eps)
    threshold = max(4.0 * (noise_floor if noise_floor is not None else 0.0), 1e-12)
    cls = classify_profile(ladder, chi, skips, threshold)
    return DefectProfile(ladder, tuple(chi), tuple(skips), n_per_eps, seed, threshold, cls)


# ---------------------------------------------------------------------------
# configuration sampling


def sample_foot_config(
    space: GeodesicSpace, center, radius: float, rng: np.random.Generator, *,
    tol_cfg: Tolerances = DEFAULT_TOL, min_seg_rel: float = 0.7,
    min_height_rel: float = 0.15, unique_only: bool = True, max_tries: int = 200,
):
    """Draw (q, seg, foot) with an interior foot and non-degenerate height."""
    for _ in range(max_tries):
        a = space.sample_ball(center, radius, rng)
        b = space.sample_ball(center, radius, rng)
        if space.distance(a, b) < min_seg_rel * radius:
            continue
        geods = space.minimal_geodesics(a, b)
        if unique_only and len(geods) > 1:
            continue
        seg = geods[0]
        q = space.sample_ball(center, radius, rng)
        try:
            foot = foot_of_perpendicular(space, q, seg, tol_cfg=tol_cfg)
        except (FootOnBoundary, DegenerateConfigError):
            continue
        if foot.d_star < min_height_rel * radius:
            continue
        p = seg.at(foot.t_star)
        # node-resolution spaces can snap an interior t* onto an endpoint
        if min(space.distance(p, seg.start), space.distance(p, seg.end)) <= tol_cfg.geo:
            continue
        return q, seg, foot
    raise DegenerateRegionError(
        f"no valid foot configuration in {max_tries} tries (radius {radius})"
    )


def sample_right_angle_config(
    space: GeodesicSpace, center, radius: float, rng: np.random.Generator, *,
    tol_cfg: Tolerances = DEFAULT_TOL, max_tries: int = 1,
) -> RightAngleConfig:
    """Draw one right-angle configuration inside the region.

    Falls back to the foot construction on spaces without geodesic shooting.
    With max_tries = 1 a failed draw raises, letting callers count skips.
    """
    last: Exception | None = None
    for _ in range(max_tries):
        beta = rng.uniform(0.0, 2.0 * PI)
        l1 = radius * rng.uniform(0.1, 0.45)
        l2 = radius * rng.uniform(0.1, 0.45)
        p = space.sample_ball(center, 0.45 * radius, rng)
        try:
            return build_right_angle_config(space, p, beta, beta + PI / 2, l1, l2, tol_cfg=tol_cfg)
        except RightAngleUnavailable as e:
            if isinstance(e.__cause__, ShootUnavailable):
                try:
                    q, seg, foot = sample_foot_config(
                        space, center, radius, rng, tol_cfg=tol_cfg, max_tries=20
                    )
                    return right_angle_from_foot(space, q, seg, tol_cfg=tol_cfg, foot=foot)
                except (DegenerateRegionError, RightAngleUnavailable) as e2:
                    last = e2
                    continue
            last = e
    raise RightAngleUnavailable(f"no right-angle configuration: {last}")
