"""Strict-predecessor search over a non-decreasing integer sequence.

Realized as binary search over a packed array; with repeated values the
returned index is the last one holding the largest value below the query.
"""

from __future__ import annotations

import numpy as np

from .bitvec import PackedIntArray, _pred_last_below


class PredecessorIndex:
    """max{i : values[i] < x} over a stored non-decreasing sequence."""

    def __init__(self, values, width: int | None = None):
        if isinstance(values, PackedIntArray):
            self._values = values
        else:
            arr = np.asarray(values, dtype=np.int64)
            if arr.size and (np.any(np.diff(arr) < 0) or int(arr[0]) < 0):
                raise ValueError("values must be non-decreasing and non-negative")
            if width is None:
                width = max(1, int(arr.max()).bit_length()) if arr.size else 1
            self._values = PackedIntArray(arr.astype(np.uint64), width)

    def __len__(self) -> int:
        return len(self._values)

    @property
    def values(self) -> PackedIntArray:
        return self._values

    @property
    def state(self):
        return self._values.state

    def _emit(self, ar) -> int:
        return self._values._emit(ar)

    def pred_index(self, x: int) -> int:
        """Largest index i with values[i] < x, or -1 if none."""
        return int(_pred_last_below(*self._values.state, 0, len(self._values), x))

    def pred_value(self, x: int) -> int:
        """Largest stored value below x, or -1 if none."""
        i = self.pred_index(x)
        return -1 if i < 0 else self._values[i]
