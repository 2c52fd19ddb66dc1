"""Kernel backend selection.

``RLNC_BACKEND`` may be ``auto`` (default: compiled if importable),
``cython`` (fail if the extension is missing) or ``python``.
"""
from __future__ import annotations

import os

from . import _kernels_py

_choice = os.environ.get("RLNC_BACKEND", "auto").lower()
if _choice not in ("auto", "cython", "python"):
    raise ImportError(f"RLNC_BACKEND={_choice!r}; expected auto, cython or python")

kernels = _kernels_py
name = "python"
if _choice != "python":
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        name = "cython"
    except ImportError:
        if _choice == "cython":
            raise


def get(backend: str | None = None):
    """Kernel module for ``backend`` (``None`` means the import-time choice)."""
    if backend is None:
        return kernels
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {backend!r}")
