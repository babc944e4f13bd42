"""Kernel backend selection.

The hot loops (Landen descent and Carlson duplication) exist twice: as
numba ``@njit`` kernels and as vectorised numpy code. Numba is used when it
imports and ``BUBBLETONS_DISABLE_NUMBA`` is unset or ``0``.
"""
from __future__ import annotations

import contextlib
import importlib
import os
from types import ModuleType

ENV_FLAG = "BUBBLETONS_DISABLE_NUMBA"

try:
    import numba  # noqa: F401
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - depends on environment
    NUMBA_AVAILABLE = False

_forced: str | None = None


def backend_name() -> str:
    if _forced is not None:
        return _forced
    if not NUMBA_AVAILABLE:
        return "numpy"
    flag = os.environ.get(ENV_FLAG, "0").strip().lower()
    return "numpy" if flag not in ("", "0", "false", "no") else "numba"


def kernels(name: str | None = None) -> ModuleType:
    name = name or backend_name()
    if name == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError("numba backend requested but numba is not installed")
        return importlib.import_module("bubbletons._kernels_numba")
    if name == "numpy":
        return importlib.import_module("bubbletons._kernels_numpy")
    raise ValueError(f"unknown kernel backend {name!r}")


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily force a backend (tests and benchmarks)."""
    global _forced
    kernels(name)
    previous, _forced = _forced, name
    try:
        yield
    finally:
        _forced = previous
