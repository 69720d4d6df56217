"""Flat storage pools shared by a structure and its sub-structures.

Query kernels address everything through two arrays: a uint64 pool for
bit payloads and an int64 pool for metadata (scalars, offsets into either
pool, small integer arrays).  Keeping the compiled-side state down to two
arrays plus a base offset makes the per-call dispatch cost of the kernels
negligible and spares every composite structure from deep tuple plumbing.

A structure appends its arrays and metadata block during `emit`; once the
outermost owner freezes the arena, every registered object is handed the
same two pools plus its own metadata base.
"""

from __future__ import annotations

import numpy as np


class Arena:
    def __init__(self) -> None:
        self._u_parts: list[np.ndarray] = []
        self._m_parts: list[np.ndarray] = []
        self._u_len = 0
        self._m_len = 0
        self._registered: list[tuple[object, int]] = []

    def add_u(self, arr: np.ndarray) -> int:
        off = self._u_len
        arr = np.ascontiguousarray(arr, dtype=np.uint64)
        self._u_parts.append(arr)
        self._u_len += arr.size
        return off

    def add_m(self, arr: np.ndarray) -> int:
        off = self._m_len
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        self._m_parts.append(arr)
        self._m_len += arr.size
        return off

    def register(self, obj: object, base: int) -> None:
        self._registered.append((obj, base))

    def freeze(self) -> None:
        pool_u = (
            np.concatenate(self._u_parts)
            if self._u_parts
            else np.zeros(1, dtype=np.uint64)
        )
        pool_m = (
            np.concatenate(self._m_parts)
            if self._m_parts
            else np.zeros(1, dtype=np.int64)
        )
        for obj, base in self._registered:
            obj._set_arena_state(pool_u, pool_m, base)


def finalize(obj) -> None:
    """Build a private arena around a structure constructed standalone."""
    ar = Arena()
    obj._emit(ar)
    ar.freeze()
