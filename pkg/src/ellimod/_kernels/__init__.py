"""Hot kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it imports and the caller's key encoding
fits in 62 bits; setting ``ELLIMOD_PURE_PYTHON=1`` forces the fallback.
"""
import os

import numpy as np

from . import _weyl_bfs_py

try:
    from . import _weyl_bfs as _weyl_bfs_cy
except ImportError:  # extension not built
    _weyl_bfs_cy = None

__all__ = ["weyl_bfs", "backend", "compiled_available"]


def compiled_available() -> bool:
    return _weyl_bfs_cy is not None


def backend() -> str:
    if _weyl_bfs_cy is None or os.environ.get("ELLIMOD_PURE_PYTHON"):
        return "python"
    return "cython"


def weyl_bfs(cartan, tracked, expected, bound, force=None):
    """Dispatch the orbit BFS to the compiled or the Python implementation."""
    cartan = np.asarray(cartan, dtype=np.int64).reshape(len(cartan), len(cartan))
    r = cartan.shape[0]
    tracked = np.asarray(tracked, dtype=np.int64).reshape(r, -1)
    which = force or backend()
    if which == "cython" and _weyl_bfs_cy is not None and (2 * bound + 1) ** r < 2 ** 62:
        return _weyl_bfs_cy.weyl_bfs(cartan, tracked, expected, bound)
    return _weyl_bfs_py.weyl_bfs(cartan, tracked, expected)
