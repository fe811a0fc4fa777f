"""Select the compiled kernel extension or the pure-numpy fallback.

The compiled module is preferred when importable; set the environment
variable ``LEXECON_DISABLE_EXT=1`` to force the fallback (used by the
benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

from lexecon import _kernels_py

if os.environ.get("LEXECON_DISABLE_EXT", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from lexecon import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl.COMPILED else "python"

perm_count_extreme = _impl.perm_count_extreme
pick_without_replacement = _impl.pick_without_replacement
lloyd = _impl.lloyd


def get_backend(name: str):
    """Return a specific kernel module by name ('compiled' or 'python')."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from lexecon import _kernels
        return _kernels
    raise ValueError(f"unknown backend {name!r}")
