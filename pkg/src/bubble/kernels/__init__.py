"""Hot diagram kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it was built and imports cleanly;
set ``BUBBLE_PURE_PYTHON=1`` to force the fallback. ``BACKEND`` names the
implementation in use.
"""

import os

from . import _pykernels

if os.environ.get("BUBBLE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

compose = _impl.compose
pair_form = _impl.pair_form
planar_pairing = _impl.planar_pairing


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found


__all__ = ["BACKEND", "compose", "pair_form", "planar_pairing", "available_backends"]
