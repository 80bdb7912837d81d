#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]

Reports best-of-N wall time per kernel and the speedup of the compiled
backend. Results also cross-check both backends against each other.
"""
import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gaussfactor._backend import available_backends, get_kernels  # noqa: E402


def timeit(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def workloads(scale):
    rng = np.random.default_rng(42)
    m = np.arange(-400, 401)
    coef = m + m * m / 105.0
    ci = np.floor(coef)
    cf = coef - ci
    w = (rng.normal(size=m.size) + 1j * rng.normal(size=m.size)).astype(complex)
    xi = np.linspace(0.0, 11.0, int(2201 * scale))
    tvals = np.array([float(n * n * 1911) for n in range(-10, 11)])
    zs = (rng.uniform(-12, 12, int(20000 * scale))
          + 1j * rng.uniform(0, 12, int(20000 * scale)))
    kappa = 2 * math.pi * 1e5 + math.pi / 4

    return {
        "phase_sum_grid(801 terms x %d xi)" % xi.size:
            lambda k: k.phase_sum_grid(ci, cf, w, xi),
        "recip_phase_sum x 2000":
            lambda k: [k.recip_phase_sum(tvals, 7.3, -1) for _ in range(2000)],
        "faddeeva_w_many(%d)" % zs.size:
            lambda k: k.faddeeva_w_many(zs),
        "bessel_j_seq(830, 2pi*1e5+pi/4)":
            lambda k: k.bessel_j_seq(830, kappa),
        "bessel_j_seq(670, 2pi*100+pi/4) x 20":
            lambda k: [k.bessel_j_seq(670, 2 * math.pi * 100 + math.pi / 4)
                       for _ in range(20)],
    }


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--scale", type=float, default=1.0)
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; run `python setup.py build_ext --inplace`")
    mods = {name: get_kernels(name) for name in backends}

    print(f"{'kernel':45s} " + " ".join(f"{b:>12s}" for b in backends) + "  speedup")
    for label, work in workloads(args.scale).items():
        times = {}
        values = {}
        for name, mod in mods.items():
            times[name], values[name] = timeit(lambda m=mod: work(m), args.repeat)
        if len(backends) == 2:
            a = np.asarray(values["python"], dtype=complex).ravel()
            b = np.asarray(values["compiled"], dtype=complex).ravel()
            denom = np.maximum(np.abs(a), 1e-300)
            mismatch = float((np.abs(a - b) / denom).max())
            if mismatch > 1e-12:
                print(f"  !! backend mismatch {mismatch:.2e} on {label}")
            speedup = times["python"] / times["compiled"]
            cols = " ".join(f"{times[b]*1e3:10.2f}ms" for b in backends)
            print(f"{label:45s} {cols}  {speedup:6.1f}x")
        else:
            cols = " ".join(f"{times[b]*1e3:10.2f}ms" for b in backends)
            print(f"{label:45s} {cols}")


if __name__ == "__main__":
    main()
