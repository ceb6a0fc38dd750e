"""Selects the permutation-codec kernel implementation at import time.

The compiled extension (gaplabels._kernels, built from _kernels.pyx)
is preferred when importable; otherwise the pure-Python twin
(_kernels_py) is used.  Set GAPLABELS_BACKEND=pure or =compiled to
force one, and use set_backend() to switch at runtime (the benchmark
does this to compare the two).
"""

import os

from . import _kernels_py

_FORCED = os.environ.get("GAPLABELS_BACKEND", "").strip().lower()

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

if _FORCED == "pure":
    kernels = _kernels_py
elif _FORCED == "compiled":
    if _compiled is None:
        raise ImportError(
            "GAPLABELS_BACKEND=compiled but the gaplabels._kernels "
            "extension is not built"
        )
    kernels = _compiled
else:
    kernels = _compiled if _compiled is not None else _kernels_py


def available_backends() -> tuple[str, ...]:
    """Names of the kernel implementations importable in this process."""
    return ("pure", "compiled") if _compiled is not None else ("pure",)


def get_backend() -> str:
    """Name of the kernel implementation currently in use."""
    return kernels.BACKEND_NAME


def set_backend(name: str) -> None:
    """Switch kernels at runtime; name is "pure" or "compiled"."""
    global kernels
    if name == "pure":
        kernels = _kernels_py
    elif name == "compiled":
        if _compiled is None:
            raise ValueError("compiled kernels are not available")
        kernels = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
