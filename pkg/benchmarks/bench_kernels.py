"""Benchmark the pair-sweep backends on the exhaustive-scan workload.

The workload is the one the library actually runs: the 84 witness-mask
tables behind the full refutation and property scans (81 copy types
plus the three pair-quantified properties), each swept over all 65535
nonempty systems of the 16-trace universe.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import importlib
import statistics
import time

import numpy as np

from siflab import BitUniverse, PropertyKind
from siflab._accel import available_backends
from siflab.siftypes import enumerate_types

_BACKEND_MODULES = {
    "python": "siflab._accel._kernels_py",
    "cython": "siflab._accel._kernels",
}


def build_workload():
    bu = BitUniverse.standard()
    tables = [bu.type_table(t).reshape(-1) for t in enumerate_types()]
    tables += [
        bu.property_table(k).reshape(-1)
        for k in (PropertyKind.SEP, PropertyKind.GNI, PropertyKind.RGNI)
    ]
    systems = bu.all_system_masks()
    return bu.n, tables, systems


def run_backend(name: str, n: int, tables, systems, repeat: int):
    mod = importlib.import_module(_BACKEND_MODULES[name])
    times = []
    outputs = None
    for _ in range(repeat):
        start = time.perf_counter()
        outputs = [mod.sweep_pairs(table, systems, n) for table in tables]
        times.append(time.perf_counter() - start)
    return min(times), statistics.mean(times), outputs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timed repetitions per backend")
    args = parser.parse_args()

    n, tables, systems = build_workload()
    print(
        f"workload: {len(tables)} sweeps x {systems.size} systems "
        f"({n}-trace universe), best of {args.repeat}"
    )

    results = {}
    reference = None
    for name in available_backends():
        best, mean, outputs = run_backend(name, n, tables, systems, args.repeat)
        results[name] = (best, mean)
        if reference is None:
            reference = outputs
        else:
            for got, want in zip(outputs, reference):
                if not np.array_equal(got, want):
                    print(f"MISMATCH: backend {name} disagrees with the first backend")
                    return 1
        per_sweep = best / len(tables) * 1e3
        print(f"  {name:<7} best {best:8.4f}s  mean {mean:8.4f}s  ({per_sweep:6.2f} ms/sweep)")

    if {"cython", "python"} <= set(results):
        speedup = results["python"][0] / results["cython"][0]
        print(f"  speedup: compiled is {speedup:.1f}x the numpy fallback on this workload")
    print("outputs identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
