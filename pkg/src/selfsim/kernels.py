"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``SELFSIM_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SELFSIM_PURE"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

mealy_run = _impl.mealy_run
mealy_run_many = _impl.mealy_run_many
bs_sigma_scaled = _impl.bs_sigma_scaled
count_identity = _impl.count_identity
