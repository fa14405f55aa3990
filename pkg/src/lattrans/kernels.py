"""Kernel selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise,
or when ``LATTRANS_PURE_PYTHON`` is set, the pure-Python kernels are used.
Both expose the same functions with identical results.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

python_kernels: ModuleType = _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


compiled_kernels: ModuleType | None = _load_compiled()

if compiled_kernels is not None and not os.environ.get("LATTRANS_PURE_PYTHON"):
    active: ModuleType = compiled_kernels
else:
    active = python_kernels

IMPLEMENTATION: str = active.IMPLEMENTATION

transversal_search = active.transversal_search
max_partial = active.max_partial
canonical = active.canonical
next_rows = active.next_rows
last_rows = active.last_rows
border_extend = active.border_extend
