"""Command-line front end: space descriptors in, deterministic CSV/JSON out.

Exit codes: 0 ok, 1 I/O, 2 config/usage (incl. model-domain violations),
3 space construction.  Set CMPK_LOG to a logging level name for diagnostics.
Reports embed the resolved config, seed and tool version; no timestamps, so
identical (config, seed, version) runs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from cmpk import __version__, criteria, estimator, model
from cmpk import mesh as mesh_mod  # noqa: F401  (registers the mesh descriptor type)
from cmpk.config import DEFAULT_TOL, Tolerances
from cmpk.errors import (
    CmpkError,
    DegenerateConfigError,
    DegenerateRegionError,
    DisconnectedGraphError,
    FootOnBoundary,
    MeshFormatError,
    ModelDomainError,
    RightAngleUnavailable,
    SpaceDescriptorError,
)
from cmpk.spaces import space_from_descriptor

log = logging.getLogger("cmpk")

SCHEMA_VERSION = 1
CRITERION_CHOICES = (
    "pythagorean", "right-angle", "point-segment", "triangle",
    "first-variation", "angle-sum", "multiplicity",
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_SPACE = 3


# ---------------------------------------------------------------------------
# report plumbing


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return value


def write_rows(out_dir: Path, name: str, header: list[str], rows: list[list]) -> Path:
    path = out_dir / f"{name}_rows.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def write_summary(out_dir: Path, name: str, payload: dict) -> Path:
    path = out_dir / f"{name}_summary.json"
    with path.open("w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
        fh.write("\n")
    return path


def envelope(command: str, config: dict, results: dict) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "tool": "cmpk",
        "version": __version__,
        "command": command,
        "config": config,
        "results": results,
    }


def validate_report(payload: dict) -> None:
    """Raise ValueError unless the payload matches the report schema."""
    required = {"schema", "tool", "version", "command", "config", "results"}
    missing = required - set(payload)
    if missing:
        raise ValueError(f"report missing keys: {sorted(missing)}")
    if payload["schema"] != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {payload['schema']}")
    if not isinstance(payload["config"], dict) or not isinstance(payload["results"], dict):
        raise ValueError("config/results must be objects")


# ---------------------------------------------------------------------------
# argument helpers


def _load_space_arg(text: str, tol: Tolerances):
    text = text.strip()
    if text.startswith("{"):
        return space_from_descriptor(text, tol)
    return space_from_descriptor(Path(text).read_text(), tol)


def _parse_region(space, text: str | None, default_radius: float = 0.2):
    if text is None:
        return space.default_center(), default_radius
    if not text.startswith("center=") or ",radius=" not in text:
        raise ValueError("--region must look like center=<json>,radius=<float>")
    center_text, radius_text = text[len("center="):].rsplit(",radius=", 1)
    center = space.point_from_data(json.loads(center_text))
    return center, float(radius_text)


def _parse_floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _tolerances(args) -> Tolerances:
    tol = DEFAULT_TOL
    if getattr(args, "tol_scale", None) is not None:
        tol = tol.with_verdict_quad(args.tol_scale)
    return tol


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# cmpk model


def cmd_model(args) -> int:
    if args.model_op == "angle":
        sides = _parse_floats(args.sides)
        if len(sides) != 3:
            raise ValueError("--sides needs three comma-separated lengths")
        angle = model.comparison_angle(args.k, tuple(sides))
        print(f"{angle:.11g}  defect={angle - math.pi / 2:.11g}")
    else:
        legs = _parse_floats(args.legs)
        if len(legs) != 2:
            raise ValueError("--legs needs two comma-separated lengths")
        side = model.side_from_angle(args.k, legs[0], legs[1], args.gamma)
        print(f"{side:.11g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# cmpk test


def _test_rows_header(criterion: str) -> list[str]:
    if criterion in ("pythagorean", "point-segment", "triangle", "right-angle"):
        return ["sample", "k", "scale", "cbb_defect", "cba_defect", "tolerance", "verdict"]
    if criterion == "first-variation":
        return ["sample", "t_star", "angle", "target", "h", "slope", "error"]
    if criterion == "angle-sum":
        return ["sample", "t_interior", "angle_r1", "angle_r2", "total", "excess"]
    return ["sample", "n_geodesics"]


def _sample_outcome(space, criterion, k, center, radius, rng, tol):
    """One sampled TestOutcome for a verdict-style criterion."""
    if criterion == "right-angle":
        cfg = criteria.sample_right_angle_config(space, center, radius, rng, tol_cfg=tol)
        defect = model.pythagorean_defect(k, cfg.d_pq, cfg.d_pr, cfg.d_qr, tol=tol)
        scale = max(cfg.d_pq, cfg.d_pr, cfg.d_qr)
        tolerance = tol.verdict_tolerance(scale)
        return criteria.TestOutcome(
            "right_angle", k, scale, defect, -defect, tolerance,
            criteria.verdict_from_defects(defect, -defect, tolerance),
        )
    q, seg, foot = criteria.sample_foot_config(space, center, radius, rng, tol_cfg=tol)
    if criterion == "pythagorean":
        return criteria.pythagorean_test(space, k, q, seg, tol_cfg=tol, foot=foot)
    if criterion == "point-segment":
        return criteria.point_segment_test(space, k, q, seg, tol_cfg=tol)
    return criteria.triangle_comparison_test(space, k, seg.start, q, seg.end, tol_cfg=tol)


def cmd_test(args) -> int:
    tol = _tolerances(args)
    space = _load_space_arg(args.space, tol)
    center, radius = _parse_region(space, args.region)
    ks = _parse_floats(args.k_grid) if args.k_grid else [args.k]
    rng = np.random.default_rng(args.seed)
    rows: list[list] = []
    skipped = 0
    verdict_counts: dict[str, int] = {}
    defects: list[float] = []

    for i in range(args.samples):
        if args.criterion == "multiplicity":
            x = space.sample_ball(center, radius, rng)
            y = space.sample_ball(center, radius, rng)
            if space.distance(x, y) <= space.tol.pt:
                skipped += 1
                continue
            n_geo = len(space.minimal_geodesics(x, y))
            rows.append([i, n_geo])
            key = "multi" if n_geo > 1 else "unique"
            verdict_counts[key] = verdict_counts.get(key, 0) + 1
            continue
        if args.criterion == "first-variation":
            q, seg, foot = criteria.sample_foot_config(space, center, radius, rng, tol_cfg=tol)
            h_max = 1e-2 * seg.length
            steps = (h_max, h_max * 0.1, h_max * 0.01)
            t_star = min(foot.t_star, seg.length - h_max * 1.5)
            rep = criteria.first_variation_check(space, q, seg, t_star, steps, tol_cfg=tol)
            rows.append([
                i, rep.t_star, rep.angle, rep.target, rep.steps[-1],
                rep.slopes[-1], rep.errors[-1],
            ])
            defects.append(rep.errors[-1])
            continue
        if args.criterion == "angle-sum":
            q, seg, foot = criteria.sample_foot_config(space, center, radius, rng, tol_cfg=tol)
            rep = criteria.angle_sum_check(space, q, seg, foot.t_star, tol_cfg=tol)
            rows.append([i, rep.t_interior, rep.angle_r1, rep.angle_r2, rep.total, rep.excess])
            defects.append(rep.excess)
            continue
        for k in ks:
            try:
                out = _sample_outcome(space, args.criterion, k, center, radius, rng, tol)
            except (RightAngleUnavailable, FootOnBoundary, DegenerateConfigError) as e:
                log.debug("sample %d skipped: %s", i, e)
                skipped += 1
                continue
            rows.append([
                i, out.k, out.scale, out.cbb_defect, out.cba_defect,
                out.tolerance, out.verdict,
            ])
            verdict_counts[out.verdict] = verdict_counts.get(out.verdict, 0) + 1
            defects.extend([out.cbb_defect, out.cba_defect])

    out_dir = _out_dir(args)
    config = {
        "space": space.descriptor(),
        "criterion": args.criterion,
        "k": ks if len(ks) > 1 else ks[0],
        "region": {"center": space.point_to_data(center), "radius": radius},
        "samples": args.samples,
        "seed": args.seed,
        "tol_scale": getattr(args, "tol_scale", None),
    }
    results = {
        "rows": len(rows),
        "skipped": skipped,
        "verdicts": verdict_counts,
        "fail_count": verdict_counts.get("fail", 0),
        "min_defect": min(defects) if defects else None,
        "max_defect": max(defects) if defects else None,
    }
    write_rows(out_dir, "test", _test_rows_header(args.criterion), rows)
    write_summary(out_dir, "test", envelope("test", config, results))
    return EXIT_OK


# ---------------------------------------------------------------------------
# cmpk estimate


def cmd_estimate(args) -> int:
    tol = _tolerances(args)
    space = _load_space_arg(args.space, tol)
    center, radius = _parse_region(space, args.region)
    names = tuple(args.criteria.split(",")) if args.criteria else ("pythagorean",)
    bracket = tuple(_parse_floats(args.bracket)) if args.bracket else (-2.0, 2.0)
    measurements = estimator.sample_measurements(
        space, center, radius, names, args.samples, args.seed, tol_cfg=tol
    )
    est = estimator.estimate_bounds(
        space, center, radius, criteria_set=names, k_bracket=bracket,
        n_samples=args.samples, seed=args.seed, resolution=args.resolution,
        tol_cfg=tol, measurements=measurements,
    )
    rows = []
    first = names[0].replace("-", "_")
    for i, m in enumerate(measurements[first]):
        row = [i]
        for k in (est.k_cbb, est.k_cba):
            if k is None:
                row.extend([None, None])
            else:
                out = estimator.evaluate_measurement(first, m, k, tol_cfg=tol)
                row.extend([out.cbb_defect, out.cba_defect])
        rows.append(row)
    out_dir = _out_dir(args)
    config = {
        "space": space.descriptor(),
        "criteria": list(names),
        "region": {"center": space.point_to_data(center), "radius": radius},
        "samples": args.samples,
        "seed": args.seed,
        "resolution": args.resolution,
        "bracket": list(bracket),
    }
    write_rows(
        out_dir, "estimate",
        ["sample", "cbb_defect_at_k_cbb", "cba_defect_at_k_cbb",
         "cbb_defect_at_k_cba", "cba_defect_at_k_cba"],
        rows,
    )
    write_summary(out_dir, "estimate", envelope("estimate", config, est.to_dict()))
    return EXIT_OK


# ---------------------------------------------------------------------------
# cmpk profile


def cmd_profile(args) -> int:
    tol = _tolerances(args)
    space = _load_space_arg(args.space, tol)
    center, radius = _parse_region(space, args.region)
    if args.centers:
        centers = [space.point_from_data(c) for c in json.loads(args.centers)]
    else:
        centers = [center]
    ladder = tuple(_parse_floats(args.eps_ladder)) if args.eps_ladder else None
    rows_data = estimator.region_report(
        space, centers, radius, n_samples=args.samples, seed=args.seed,
        eps_ladder=ladder, n_per_eps=args.per_eps, tol_cfg=tol,
        diagnostic_only=space.name == "mesh",
    )
    csv_rows = []
    for row in rows_data:
        prof = row.get("profile")
        if not prof:
            continue
        for eps, chi, skip in zip(prof["eps_ladder"], prof["chi"], prof["skip_fraction"]):
            csv_rows.append([row["index"], eps, chi, skip, prof["classification"]])
    out_dir = _out_dir(args)
    config = {
        "space": space.descriptor(),
        "centers": [space.point_to_data(c) for c in centers],
        "radius": radius,
        "samples": args.samples,
        "per_eps": args.per_eps,
        "seed": args.seed,
    }
    write_rows(out_dir, "profile",
               ["center", "eps", "chi", "skip_fraction", "classification"], csv_rows)
    write_summary(out_dir, "profile", envelope("profile", config, {"rows": rows_data}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# cmpk mesh


def cmd_mesh(args) -> int:
    tol = _tolerances(args)
    tri = mesh_mod.load_obj(args.obj)
    space = mesh_mod.mesh_space(tri, args.steiner, path=str(args.obj), tol=tol)
    rng = np.random.default_rng(args.seed)
    n = space.graph.n_nodes
    pairs = rng.integers(0, n, size=(args.pairs, 2))
    sources = np.unique(pairs[:, 0])
    table = space.graph.distances_from(sources)
    src_index = {int(s): i for i, s in enumerate(sources)}
    rows = [
        [int(a), int(b), float(table[src_index[int(a)], int(b)])]
        for a, b in pairs
    ]
    dists = [r[2] for r in rows if r[0] != r[1]]
    out_dir = _out_dir(args)
    config = {
        "space": space.descriptor(),
        "obj": str(args.obj),
        "steiner": args.steiner,
        "pairs": args.pairs,
        "seed": args.seed,
    }
    results = {
        "diagnostic_only": True,
        "vertices": int(len(tri.vertices)),
        "faces": int(len(tri.faces)),
        "nodes": int(n),
        "error_bar": space.resolution,
        "mean_pair_distance": float(np.mean(dists)) if dists else None,
        "max_pair_distance": float(np.max(dists)) if dists else None,
    }
    write_rows(out_dir, "mesh", ["src", "dst", "distance"], rows)
    write_summary(out_dir, "mesh", envelope("mesh", config, results))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmpk",
        description="Curvature-bound comparison tests on geodesic metric spaces",
    )
    parser.add_argument("--version", action="version", version=f"cmpk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_model = sub.add_parser("model", help="one-shot model-surface trig queries")
    msub = p_model.add_subparsers(dest="model_op", required=True)
    p_angle = msub.add_parser("angle", help="comparison angle from three sides")
    p_angle.add_argument("--k", type=float, required=True)
    p_angle.add_argument("--sides", required=True, help="a,b,c (angle between a and b)")
    p_angle.set_defaults(func=cmd_model)
    p_side = msub.add_parser("side", help="third side from two legs and the angle")
    p_side.add_argument("--k", type=float, required=True)
    p_side.add_argument("--legs", required=True, help="a,b")
    p_side.add_argument("--gamma", type=float, required=True)
    p_side.set_defaults(func=cmd_model)

    def common(p, samples_default: int):
        p.add_argument("--space", required=True, help="descriptor JSON or a path to one")
        p.add_argument("--region", help="center=<json>,radius=<float>")
        p.add_argument("--samples", type=int, default=samples_default)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--tol-scale", type=float, dest="tol_scale",
                       help="override the quadratic verdict-tolerance coefficient")

    p_test = sub.add_parser("test", help="run a sampled criterion batch")
    common(p_test, 100)
    p_test.add_argument("--criterion", required=True, choices=CRITERION_CHOICES)
    p_test.add_argument("--k", type=float, default=0.0)
    p_test.add_argument("--k-grid", dest="k_grid", help="comma list of k values")
    p_test.set_defaults(func=cmd_test)

    p_est = sub.add_parser("estimate", help="bisection curvature-bound estimate")
    common(p_est, 300)
    p_est.add_argument("--criteria", help="comma list: pythagorean,point-segment,triangle")
    p_est.add_argument("--resolution", type=float, default=0.01)
    p_est.add_argument("--bracket", help="k_lo,k_hi (default -2,2)")
    p_est.set_defaults(func=cmd_estimate)

    p_prof = sub.add_parser("profile", help="region report with Riemannian-point profiles")
    common(p_prof, 120)
    p_prof.add_argument("--centers", help="JSON list of point data (default: region center)")
    p_prof.add_argument("--eps-ladder", dest="eps_ladder", help="comma list, decreasing")
    p_prof.add_argument("--per-eps", dest="per_eps", type=int, default=128)
    p_prof.set_defaults(func=cmd_profile)

    p_mesh = sub.add_parser("mesh", help="mesh ingestion diagnostics")
    p_mesh.add_argument("--obj", required=True, help="Wavefront OBJ path")
    p_mesh.add_argument("--steiner", type=int, default=4)
    p_mesh.add_argument("--pairs", type=int, default=200)
    p_mesh.add_argument("--seed", type=int, default=0)
    p_mesh.add_argument("--out", required=True)
    p_mesh.add_argument("--tol-scale", type=float, dest="tol_scale")
    p_mesh.set_defaults(func=cmd_mesh)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("CMPK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpaceDescriptorError, MeshFormatError, DisconnectedGraphError) as e:
        print(f"space construction error: {e}", file=sys.stderr)
        return EXIT_SPACE
    except (ModelDomainError, DegenerateConfigError, DegenerateRegionError,
            ValueError, json.JSONDecodeError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except CmpkError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
