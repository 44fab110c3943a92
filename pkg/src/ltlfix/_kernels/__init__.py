"""Kernel backend selection.

The compiled extension is used when it was built; otherwise, or when
``LTLFIX_PURE_PYTHON`` is set to a non-empty value, the pure-Python kernels
are loaded.  ``BACKEND`` names the active one.
"""

import os

from . import _pykernels

MAX_COMPILED_BITS = 64

_compiled = None
if not os.environ.get("LTLFIX_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def backend_for(width: int):
    """Kernel module able to handle a closure of ``width`` formulas."""
    if _compiled is not None and width <= MAX_COMPILED_BITS:
        return _compiled
    return _pykernels


def available_backends() -> dict:
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
