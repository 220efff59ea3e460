"""Hot-kernel dispatch: the compiled extension when it is built, the pure version otherwise.

Set MAGIC4_PURE=1 to force the pure version.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("MAGIC4_PURE") != "1":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass

cone_kernel_points = _impl.cone_kernel_points
cartan_density = _impl.cartan_density
