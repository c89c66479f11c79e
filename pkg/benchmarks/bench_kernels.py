#!/usr/bin/env python3
"""Benchmark the compiled trig kernels against the pure-Python fallback.

The workloads mirror the two hot paths: single side/angle evaluations (foot
search) and fixed-triple angle sweeps over a k grid (bound bisection).

Usage: python benchmarks/bench_kernels.py [--calls N]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from cmpk.kernels import available_backends


def make_inputs(n: int, seed: int = 42):
    rng = np.random.default_rng(seed)
    ks = rng.uniform(-4.0, 4.0, n)
    caps = np.where(ks > 0, np.minimum(1.2, 0.22 * 2 * math.pi / np.sqrt(np.abs(ks) + 1e-300)), 1.2)
    aa = rng.uniform(0.02, caps)
    bb = rng.uniform(0.02, caps)
    cos_g = np.cos(rng.uniform(0.05, math.pi - 0.05, n))
    return list(zip(ks.tolist(), aa.tolist(), bb.tolist(), cos_g.tolist()))


def bench_round_trip(impl, inputs) -> float:
    side = impl.side_from_angle_cos
    angle = impl.cos_angle_from_sides
    t0 = time.perf_counter()
    acc = 0.0
    for k, a, b, cg in inputs:
        c = side(k, a, b, cg)
        acc += angle(k, a, b, c)
    dt = time.perf_counter() - t0
    if not math.isfinite(acc):
        raise RuntimeError("benchmark produced non-finite values")
    return dt


def bench_k_sweep(impl, inputs, grid=21) -> float:
    angle = impl.cos_angle_from_sides
    side = impl.side_from_angle_cos
    triples = [(k, a, b, side(k, a, b, cg)) for k, a, b, cg in inputs[: max(1, len(inputs) // grid)]]
    ks = np.linspace(-2.0, 2.0, grid).tolist()
    t0 = time.perf_counter()
    acc = 0.0
    for _, a, b, c in triples:
        for k in ks:
            acc += angle(k, a, b, c)
    dt = time.perf_counter() - t0
    if not math.isfinite(acc):
        raise RuntimeError("benchmark produced non-finite values")
    return dt


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--calls", type=int, default=200_000)
    args = parser.parse_args()

    backends = available_backends()
    inputs = make_inputs(args.calls)
    workloads = [("round-trip", bench_round_trip), ("k-sweep", bench_k_sweep)]

    results: dict[tuple[str, str], float] = {}
    for name, impl in backends.items():
        for label, fn in workloads:
            fn(impl, inputs[:1000])  # warm-up
            results[(name, label)] = fn(impl, inputs)

    print(f"{'workload':<12} {'backend':<8} {'seconds':>9} {'Mcalls/s':>9} {'speedup':>8}")
    for label, _ in workloads:
        base = results.get(("python", label))
        for name in backends:
            dt = results[(name, label)]
            rate = args.calls / dt / 1e6
            speedup = f"{base / dt:6.2f}x" if (base and name != "python") else "      -"
            print(f"{label:<12} {name:<8} {dt:9.3f} {rate:9.2f} {speedup:>8}")
    if "cython" not in backends:
        print("note: compiled backend unavailable; only the fallback was timed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
