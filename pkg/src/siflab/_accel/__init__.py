"""Sweep-kernel backend selection.

The pair sweep is the hot loop behind every exhaustive system scan.  A
compiled implementation is preferred when the extension built; otherwise
the NumPy implementation is used.  Set ``SIFLAB_PURE=1`` to force the
NumPy backend regardless of what is installed.
"""

from __future__ import annotations

import os

if os.environ.get("SIFLAB_PURE"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

sweep_pairs = _impl.sweep_pairs


def available_backends() -> tuple[str, ...]:
    found = ["python"]
    try:
        from . import _kernels  # noqa: F401

        found.insert(0, "cython")
    except ImportError:
        pass
    return tuple(found)
