"""NumPy implementation of the pair sweep.

Semantics contract (shared with the compiled kernel): given an n-by-n
table ``match`` of member bitmasks and an array of system bitmasks,
``ok[i]`` is 1 iff for every ordered pair (a, b) of members of system i
the intersection ``systems[i] & match[a*n + b]`` is nonempty.
"""

from __future__ import annotations

import numpy as np

_U64 = np.uint64
_ZERO = np.uint64(0)
_ONE = np.uint64(1)


def sweep_pairs(match, systems, n: int):
    match = np.ascontiguousarray(match, dtype=_U64).reshape(n, n)
    systems = np.ascontiguousarray(systems, dtype=_U64)
    m = systems.shape[0]
    ok = np.ones(m, dtype=bool)
    live = np.arange(m)
    for a in range(n):
        if live.size == 0:
            break
        sa = systems[live]
        has_a = ((sa >> _U64(a)) & _ONE).astype(bool)
        if not has_a.any():
            continue
        for b in range(n):
            sa = systems[live]
            sel = ((sa >> _U64(a)) & _ONE).astype(bool) & ((sa >> _U64(b)) & _ONE).astype(bool)
            if not sel.any():
                continue
            bad = sel & ((sa & match[a, b]) == _ZERO)
            if bad.any():
                ok[live[bad]] = False
                live = live[~bad]
                if live.size == 0:
                    break
    return ok.astype(np.uint8)
