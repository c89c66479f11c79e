"""Quantitative curvature-bound estimates from the pass/fail criteria.

One configuration set is sampled per estimate (fixed by the seed) and reused
across every tested k, so the per-sample defects inherit the comparison-angle
monotonicity in k and bisection over k is sound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from cmpk import criteria
from cmpk.config import DEFAULT_TOL, Tolerances
from cmpk.errors import BracketExpansionError, CmpkError, ModelDomainError
from cmpk.spaces import GeodesicSpace

CRITERIA_NAMES = ("pythagorean", "point_segment", "triangle")
DEFAULT_K_GRID = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)


@dataclass(frozen=True)
class CurvatureEstimate:
    space: dict
    center: list
    radius: float
    criteria: tuple[str, ...]
    n_samples: int
    seed: int
    resolution: float
    k_cbb: float | None
    k_cba: float | None
    cbb_residual: float | None  # worst oriented lower-bound defect at k_cbb
    cba_residual: float | None
    cbb_note: str = ""
    cba_note: str = ""

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "center": self.center,
            "radius": self.radius,
            "criteria": list(self.criteria),
            "n_samples": self.n_samples,
            "seed": self.seed,
            "resolution": self.resolution,
            "k_cbb": self.k_cbb,
            "k_cba": self.k_cba,
            "cbb_residual": self.cbb_residual,
            "cba_residual": self.cba_residual,
            "cbb_note": self.cbb_note,
            "cba_note": self.cba_note,
        }


def _normalize_criteria(names: Sequence[str]) -> tuple[str, ...]:
    out = []
    for name in names:
        canon = name.replace("-", "_")
        if canon not in CRITERIA_NAMES:
            raise ValueError(f"unknown criterion {name!r}; choose from {CRITERIA_NAMES}")
        out.append(canon)
    return tuple(out)


def sample_measurements(
    space: GeodesicSpace, center, radius: float, names: Sequence[str],
    n_samples: int, seed: int, *, n_probes: int = 9,
    tol_cfg: Tolerances = DEFAULT_TOL,
) -> dict[str, list]:
    """Measure n_samples shared foot configurations for the named criteria."""
    names = _normalize_criteria(names)
    rng = np.random.default_rng(seed)
    out: dict[str, list] = {name: [] for name in names}
    for _ in range(n_samples):
        q, seg, foot = criteria.sample_foot_config(space, center, radius, rng, tol_cfg=tol_cfg)
        if "pythagorean" in out:
            out["pythagorean"].append(
                criteria.measure_pythagorean(space, q, seg, tol_cfg=tol_cfg, foot=foot)
            )
        if "point_segment" in out:
            out["point_segment"].append(criteria.measure_point_segment(space, q, seg, n_probes))
        if "triangle" in out:
            out["triangle"].append(
                criteria.measure_triangle(space, seg.start, q, seg.end, tol_cfg=tol_cfg)
            )
    return out


_EVALUATORS: dict[str, Callable] = {
    "pythagorean": criteria.evaluate_pythagorean,
    "point_segment": criteria.evaluate_point_segment,
    "triangle": criteria.evaluate_triangle,
}


def evaluate_measurement(name: str, measurement, k: float, *,
                         tol_cfg: Tolerances = DEFAULT_TOL) -> criteria.TestOutcome:
    """Evaluate one stored measurement of the named criterion at curvature k."""
    return _EVALUATORS[name.replace("-", "_")](measurement, k, tol_cfg=tol_cfg)


def _orientation_pass(measurements: dict[str, list], k: float, orientation: str,
                      tol_cfg: Tolerances) -> bool:
    """True when every sample passes the claim at k; inadmissible counts as fail."""
    for name, ms in measurements.items():
        ev = _EVALUATORS[name]
        for m in ms:
            try:
                if not ev(m, k, tol_cfg=tol_cfg).passes(orientation):
                    return False
            except ModelDomainError:
                return False
    return True


def _worst_defect(measurements: dict[str, list], k: float, orientation: str,
                  tol_cfg: Tolerances) -> float:
    worst = -math.inf
    for name, ms in measurements.items():
        ev = _EVALUATORS[name]
        for m in ms:
            out = ev(m, k, tol_cfg=tol_cfg)
            worst = max(worst, out.cbb_defect if orientation == "cbb" else out.cba_defect)
    return worst


def _expand(passes: Callable[[float], bool], k0: float, step0: float, want: bool,
            limit: float) -> float:
    """Walk k by doubling steps until passes(k) == want; raise past the limit."""
    k, step = k0, step0
    while passes(k) != want:
        k += step
        step *= 2.0
        if abs(k) > limit:
            raise BracketExpansionError(
                f"no {'pass' if want else 'fail'} endpoint found within |k| <= {limit}"
            )
    return k


def _bisect(passes: Callable[[float], bool], k_pass: float, k_fail: float,
            resolution: float) -> tuple[float, float]:
    while abs(k_fail - k_pass) > resolution:
        mid = 0.5 * (k_pass + k_fail)
        if passes(mid):
            k_pass = mid
        else:
            k_fail = mid
    return k_pass, k_fail


def estimate_bounds(
    space: GeodesicSpace, center, radius: float, *,
    criteria_set: Sequence[str] = ("pythagorean",),
    k_bracket: tuple[float, float] = (-2.0, 2.0),
    n_samples: int = 300, seed: int = 0, resolution: float = 0.01,
    expansion_limit: float = 1024.0, n_probes: int = 9,
    tol_cfg: Tolerances = DEFAULT_TOL,
    measurements: dict[str, list] | None = None,
) -> CurvatureEstimate:
    """Largest lower bound and smallest upper bound passing on a fixed sample set.

    ``k_cbb`` is the largest k whose lower-bound claim passes every sampled
    configuration (bisection to `resolution`), ``k_cba`` the smallest passing
    upper bound; either is None with a note when bracket expansion hits the
    limit (e.g. no lower curvature bound at a branch point).
    """
    names = _normalize_criteria(criteria_set)
    if measurements is None:
        measurements = sample_measurements(
            space, center, radius, names, n_samples, seed, n_probes=n_probes, tol_cfg=tol_cfg
        )
    k_lo, k_hi = k_bracket
    if not k_lo < k_hi:
        raise ValueError("k_bracket must satisfy k_lo < k_hi")
    step = k_hi - k_lo

    k_cbb = cbb_residual = None
    cbb_note = ""

    def passes_cbb(k: float) -> bool:
        return _orientation_pass(measurements, k, "cbb", tol_cfg)

    try:
        # the lower-bound claim holds for all k below a threshold
        lo_pass = _expand(passes_cbb, k_lo, -step, True, expansion_limit)
        hi_fail = _expand(passes_cbb, k_hi, step, False, expansion_limit)
        k_cbb, _ = _bisect(passes_cbb, lo_pass, hi_fail, resolution)
        cbb_residual = _worst_defect(measurements, k_cbb, "cbb", tol_cfg)
    except BracketExpansionError as e:
        cbb_note = str(e)

    k_cba = cba_residual = None
    cba_note = ""

    def passes_cba(k: float) -> bool:
        return _orientation_pass(measurements, k, "cba", tol_cfg)

    try:
        # the upper-bound claim holds for all k above a threshold
        hi_pass = _expand(passes_cba, k_hi, step, True, expansion_limit)
        lo_fail = _expand(passes_cba, k_lo, -step, False, expansion_limit)
        while abs(hi_pass - lo_fail) > resolution:
            mid = 0.5 * (lo_fail + hi_pass)
            if passes_cba(mid):
                hi_pass = mid
            else:
                lo_fail = mid
        k_cba = hi_pass
        cba_residual = _worst_defect(measurements, k_cba, "cba", tol_cfg)
    except BracketExpansionError as e:
        cba_note = str(e)

    return CurvatureEstimate(
        space.descriptor(), space.point_to_data(center), radius, names,
        n_samples, seed, resolution, k_cbb, k_cba, cbb_residual, cba_residual,
        cbb_note, cba_note,
    )


def estimate_profile_noise_floor(
    eps_ladder: Sequence[float], n_per_eps: int, seed: int, *,
    tol_cfg: Tolerances = DEFAULT_TOL,
) -> float:
    """Numerical chi floor measured on the flat plane with the same sampling."""
    from cmpk.spaces import make_euclidean_plane

    plane = make_euclidean_plane(tol_cfg)
    x = plane.default_center()
    worst = 0.0
    for eps in eps_ladder:
        c, _ = criteria.chi_at_scale(plane, x, eps, n_per_eps, seed, tol_cfg=tol_cfg)
        worst = max(worst, c)
    return max(worst, 1e-14)


def region_report(
    space: GeodesicSpace, centers: Sequence, radius: float, *,
    criteria_set: Sequence[str] = ("pythagorean",), n_samples: int = 120,
    seed: int = 0, resolution: float = 0.01, eps_ladder: Sequence[float] | None = None,
    n_per_eps: int = 128, probe_pairs: int = 200, diagnostic_only: bool = False,
    tol_cfg: Tolerances = DEFAULT_TOL,
) -> list[dict]:
    """Per-center bound estimates, Riemannian-point profiles, multiplicity counts.

    Per-center failures are recorded in the row and the run continues.
    """
    if eps_ladder is None:
        eps_ladder = tuple(radius * f for f in (1.0, 0.5, 0.25, 0.125))
    floor = estimate_profile_noise_floor(eps_ladder, n_per_eps, seed, tol_cfg=tol_cfg)
    rows = []
    for idx, center in enumerate(centers):
        row: dict = {"index": idx, "center": space.point_to_data(center)}
        if diagnostic_only:
            row["diagnostic_only"] = True
        try:
            est = estimate_bounds(
                space, center, radius, criteria_set=criteria_set, n_samples=n_samples,
                seed=seed, resolution=resolution, tol_cfg=tol_cfg,
            )
            row["estimate"] = est.to_dict()
        except (CmpkError, ValueError) as e:
            row["estimate_error"] = f"{type(e).__name__}: {e}"
        try:
            prof = criteria.riemannian_point_profile(
                space, center, eps_ladder, n_per_eps, seed, noise_floor=floor, tol_cfg=tol_cfg
            )
            row["profile"] = prof.to_dict()
        except (CmpkError, ValueError) as e:
            row["profile_error"] = f"{type(e).__name__}: {e}"
        try:
            rng = np.random.default_rng([seed, idx])
            probe = criteria.geodesic_multiplicity_probe(space, (center, radius), probe_pairs, rng)
            row["multiplicity"] = {"n_pairs": probe.n_pairs, "multi_pairs": probe.multi_pairs}
        except (CmpkError, ValueError) as e:
            row["multiplicity_error"] = f"{type(e).__name__}: {e}"
        rows.append(row)
    return rows