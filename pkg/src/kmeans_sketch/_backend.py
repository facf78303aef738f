"""Selects the kernel backend at import time.

The compiled extension is used when it was built; otherwise the numpy
implementations take over transparently.  Set ``KMEANS_SKETCH_BACKEND=python``
to force the fallback (useful for benchmarking the two against each other).
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on how the package was built
    _compiled = None

if os.environ.get("KMEANS_SKETCH_BACKEND", "").strip().lower() == "python":
    active = _kernels_py
else:
    active = _compiled if _compiled is not None else _kernels_py


def backend_name() -> str:
    return active.BACKEND


def available_backends() -> dict:
    """Importable kernel modules keyed by name (for benchmarks and tests)."""
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out
