"""Kernel backend selection.

The hot kernels exist twice: numba-compiled (_kernels_numba) and pure
numpy/python (_kernels_py).  The CUBICRINGS_BACKEND environment variable picks
one ("numba" or "python"); default is numba when importable, else the fallback.
Both produce bit-identical results, so every enumeration is deterministic
across backends.
"""

from __future__ import annotations

import os

from . import _kernels_py

_modules = {"python": _kernels_py}
try:  # pragma: no cover - depends on environment
    from . import _kernels_numba

    _modules["numba"] = _kernels_numba
except ImportError:  # pragma: no cover
    _kernels_numba = None

_DEFAULT = os.environ.get("CUBICRINGS_BACKEND", "").strip().lower()
if _DEFAULT not in _modules:
    _DEFAULT = "numba" if "numba" in _modules else "python"

_active_name = _DEFAULT
_active = _modules[_active_name]


def set_backend(name: str) -> None:
    """Switch kernels at runtime (used by the benchmark; tests use the env var)."""
    global _active, _active_name
    if name not in _modules:
        raise ValueError(f"unknown backend {name!r}; have {sorted(_modules)}")
    _active_name = name
    _active = _modules[name]


def backend_name() -> str:
    return _active_name


def available_backends() -> list[str]:
    return sorted(_modules)


class _Proxy:
    """Late-binding accessor so set_backend takes effect everywhere."""

    def __getattr__(self, item):
        return getattr(_active, item)


K = _Proxy()
