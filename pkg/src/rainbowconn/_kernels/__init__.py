"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

The backend is picked once at import time. Set ``RAINBOWCONN_DISABLE_NUMBA=1``
to force the numpy path (or when numba is not installed it is used anyway).

Kernels
-------
bfs_all_pairs(indptr, indices)
    Distance matrix (int32, -1 for unreachable) and shortest-path counts (int64)
    of an unweighted CSR graph.
rainbow_reach_table(indptr, indices, colors, k, source)
    ``table[S, v] == 1`` iff some rainbow walk from ``source`` to ``v`` along
    the given arcs uses exactly the color bitmask ``S``.
components_without_each_color(n, eu, ev, ec, k)
    ``labels[c, v]`` is the smallest vertex index in ``v``'s component of the
    graph with every edge of color ``c`` removed.
"""

import os

from . import _numpy as numpy_impl

try:
    from . import _numba as numba_impl
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_impl = None


def _flag(name):
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = numba_impl is not None and not _flag("RAINBOWCONN_DISABLE_NUMBA")
BACKEND = "numba" if USE_NUMBA else "numpy"

_impl = numba_impl if USE_NUMBA else numpy_impl

bfs_all_pairs = _impl.bfs_all_pairs
rainbow_reach_table = _impl.rainbow_reach_table
components_without_each_color = _impl.components_without_each_color

__all__ = [
    "BACKEND",
    "USE_NUMBA",
    "bfs_all_pairs",
    "components_without_each_color",
    "numba_impl",
    "numpy_impl",
    "rainbow_reach_table",
]
