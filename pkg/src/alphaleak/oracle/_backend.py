"""Pick the lattice kernel at import time.

The compiled extension is used when it was built; setting
``ALPHALEAK_PURE_PYTHON=1`` forces the NumPy fallback.
"""

import os

BACKEND = "python"

if os.environ.get("ALPHALEAK_PURE_PYTHON", "") not in ("", "0"):
    from ._lattice_py import lattice_argmax
else:
    try:
        from ._lattice import lattice_argmax
        BACKEND = "cython"
    except ImportError:
        from ._lattice_py import lattice_argmax

POWER, LINEAR, MIN = 0, 1, 2

__all__ = ["BACKEND", "LINEAR", "MIN", "POWER", "lattice_argmax"]
