"""Backend selection for the inner loops.

The compiled extension is used when it imports; set
``ISOTONIAN_PURE_PYTHON=1`` to force the pure-Python code.
"""

import os

from isotonian import _pykernels

if os.environ.get("ISOTONIAN_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from isotonian import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

hom_table = _impl.hom_table
fiber_members = _impl.fiber_members
group_fibers = _impl.group_fibers
fiber_profile = _impl.fiber_profile
multidegree_key = _pykernels.multidegree_key


def load(name):
    """Return the kernel module for ``name`` ("python" or "cython")."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from isotonian import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
