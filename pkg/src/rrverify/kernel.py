"""Select the exploration kernel: the compiled one when available, else pure Python.

Set ``RRVERIFY_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernel

if os.environ.get("RRVERIFY_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernel
else:
    try:
        from . import _ckernel as _impl
    except ImportError:
        _impl = _pykernel

Node = _impl.Node
ReachCore = _impl.ReachCore
IMPLEMENTATION = _impl.IMPLEMENTATION


def available() -> dict:
    """Every kernel module that imports in this environment, by name."""
    found = {"python": _pykernel}
    try:
        from . import _ckernel
        found["cython"] = _ckernel
    except ImportError:
        pass
    return found
