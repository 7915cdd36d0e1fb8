"""Backend equivalence for the pair-sweep kernel."""

from __future__ import annotations

import os
import random
import subprocess
import sys

import numpy as np

from siflab._accel import BACKEND, available_backends, sweep_pairs
from siflab._accel import _kernels_py


def _reference_sweep(match, systems, n):
    """Inline restatement of the kernel contract, kept deliberately naive."""
    match = [int(x) for x in np.asarray(match, dtype=np.uint64).reshape(-1)]
    out = []
    for s in np.asarray(systems, dtype=np.uint64).tolist():
        s = int(s)
        ok = 1
        for a in range(n):
            if not s >> a & 1:
                continue
            for b in range(n):
                if s >> b & 1 and not (s & match[a * n + b]):
                    ok = 0
                    break
            if not ok:
                break
        out.append(ok)
    return np.array(out, dtype=np.uint8)


def _random_case(rng, n):
    full = (1 << n) - 1
    match = np.array(
        [rng.randrange(0, full + 1) for _ in range(n * n)], dtype=np.uint64
    )
    systems = np.array(
        [rng.randrange(0, full + 1) for _ in range(200)], dtype=np.uint64
    )
    return match, systems


def test_compiled_backend_is_available_and_selected():
    assert available_backends()[0] == "cython"
    assert BACKEND == "cython"


def test_backends_agree_on_random_tables():
    rng = random.Random(47)
    try:
        from siflab._accel import _kernels
    except ImportError:  # pragma: no cover - guarded by the test above
        raise AssertionError("compiled kernel missing")
    for n in (1, 2, 7, 16, 33, 64):
        match, systems = _random_case(rng, min(n, 60))
        n_eff = min(n, 60)
        a = _kernels.sweep_pairs(match, systems, n_eff)
        b = _kernels_py.sweep_pairs(match, systems, n_eff)
        c = _reference_sweep(match, systems, n_eff)
        assert np.array_equal(a, b) and np.array_equal(b, c), n


def test_active_backend_matches_reference_on_edge_masks():
    n = 4
    match = np.zeros(n * n, dtype=np.uint64)  # nothing ever matches
    systems = np.array([0, 1, 0b1010, 0b1111], dtype=np.uint64)
    got = sweep_pairs(match, systems, n)
    # the empty system passes vacuously; any member breaks every pair
    assert got.tolist() == [1, 0, 0, 0]
    match = np.full(n * n, (1 << n) - 1, dtype=np.uint64)
    assert sweep_pairs(match, systems, n).tolist() == [1, 1, 1, 1]


def test_pure_mode_forces_the_python_backend():
    code = (
        "import siflab._accel as acc; "
        "print(acc.BACKEND)"
    )
    env = dict(os.environ, SIFLAB_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    assert out.stdout.strip() == "python"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={k: v for k, v in os.environ.items() if k != "SIFLAB_PURE"},
        check=True,
    )
    assert out.stdout.strip() == "cython"


def test_pure_mode_full_property_counts_match():
    code = (
        "from siflab import BitUniverse, PropertyKind; "
        "bu = BitUniverse.standard(); "
        "print(int(bu.property_ok(PropertyKind.SEP).sum()), "
        "int(bu.property_ok(PropertyKind.GNI).sum()))"
    )
    env = dict(os.environ, SIFLAB_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    assert out.stdout.split() == ["225", "10509"]
