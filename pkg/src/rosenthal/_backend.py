"""Kernel backend selection.

The hot series/sampling loops exist twice: as a compiled Cython extension
(``rosenthal._kernels``) and as a pure-Python mirror
(``rosenthal._kernels_py``).  The compiled one is used when importable;
set ``ROSENTHAL_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and the backend-agreement tests).
"""

from __future__ import annotations

import os

if os.environ.get("ROSENTHAL_PURE_PYTHON"):
    from rosenthal import _kernels_py as kernels
else:
    try:
        from rosenthal import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from rosenthal import _kernels_py as kernels  # type: ignore[no-redef]

BACKEND_NAME: str = kernels.BACKEND_NAME
