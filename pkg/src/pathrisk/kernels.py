"""Backend selection for the hot path-scanning kernels.

The compiled ``pathrisk._core`` extension is used when it was built; otherwise
the numpy implementation in ``pathrisk._core_py`` takes over. Set the
environment variable ``PATHRISK_BACKEND`` to ``python`` or ``cython`` to force
a choice (forcing ``cython`` without a built extension raises ImportError).
"""

import os
from types import ModuleType

from . import _core_py

try:
    from . import _core as _core_c
except ImportError:  # extension not built
    _core_c = None

__all__ = ["BACKEND", "available_backends", "get_backend", "scan_rows",
           "episode_rows", "window_extremes"]


def available_backends():
    names = ["python"]
    if _core_c is not None:
        names.insert(0, "cython")
    return names


def get_backend(name: str) -> ModuleType:
    if name == "python":
        return _core_py
    if name == "cython":
        if _core_c is None:
            raise ImportError("pathrisk._core is not built; reinstall with Cython available")
        return _core_c
    raise ValueError(f"unknown backend {name!r}")


def _select():
    forced = os.environ.get("PATHRISK_BACKEND", "").strip().lower()
    if forced:
        return forced, get_backend(forced)
    name = available_backends()[0]
    return name, get_backend(name)


BACKEND, _impl = _select()

scan_rows = _impl.scan_rows
episode_rows = _impl.episode_rows
window_extremes = _impl.window_extremes
