"""Backend selection for the mod-p kernels.

The compiled extension is used when it imports; set ``BINARYK_PURE=1`` to force
the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
matmul_mod_p = _kernels_py.matmul_mod_p
rref_mod_p = _kernels_py.rref_mod_p
det_mod_p = _kernels_py.det_mod_p

if os.environ.get("BINARYK_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        BACKEND = "compiled"
        matmul_mod_p = _kernels.matmul_mod_p
        rref_mod_p = _kernels.rref_mod_p
        det_mod_p = _kernels.det_mod_p
