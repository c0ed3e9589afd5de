"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``RINGCOVER_PURE=1`` to force the numpy kernels.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("RINGCOVER_PURE"):
        raise ImportError("pure kernels requested")
    from . import _ckernels as _active
except ImportError:
    _active = _pykernels

BACKEND: str = _active.BACKEND
associative_tables = _active.associative_tables
python_associative_tables = _pykernels.associative_tables


def compiled_available() -> bool:
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return False
    return True
