"""Kernel backend selection: compiled extension if importable, else pure Python.

Set CLIQUESTREAM_PURE=1 to force the Python backend (useful for the
compiled-vs-pure benchmark and for debugging).
"""

from __future__ import annotations

import os

from . import _kernels_py

_COMPILED = None
if not os.environ.get("CLIQUESTREAM_PURE"):
    try:
        from . import _kernels_c as _COMPILED
    except ImportError:
        _COMPILED = None

# Compiled kernels pack masks into uint64, so they only take small components.
_COMPILED_MAX_N = 64


def backend_name() -> str:
    return _COMPILED.BACKEND_NAME if _COMPILED is not None else _kernels_py.BACKEND_NAME


def has_compiled() -> bool:
    return _COMPILED is not None


def exhaustive_max_partition(adj: list[int]) -> tuple[int, list[int]]:
    if _COMPILED is not None and len(adj) <= _COMPILED_MAX_N:
        return _COMPILED.exhaustive_max_partition(adj)
    return _kernels_py.exhaustive_max_partition(adj)


def branch_bound_max_partition(adj: list[int], node_limit: int) -> tuple[int, list[int], int, bool]:
    if _COMPILED is not None and len(adj) <= _COMPILED_MAX_N:
        return _COMPILED.branch_bound_max_partition(adj, node_limit)
    return _kernels_py.branch_bound_max_partition(adj, node_limit)
