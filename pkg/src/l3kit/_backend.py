"""Select the elimination kernel at import time.

The compiled extension is used when it imports; setting ``L3KIT_PURE_PYTHON=1``
forces the pure-Python kernel.
"""

import os

from . import _elim_py

if os.environ.get("L3KIT_PURE_PYTHON", "") not in ("", "0"):
    row_echelon = _elim_py.row_echelon
    BACKEND = "python"
else:
    try:
        from ._elim_ext import row_echelon
        BACKEND = "cython"
    except ImportError:
        row_echelon = _elim_py.row_echelon
        BACKEND = "python"

__all__ = ["row_echelon", "BACKEND"]
