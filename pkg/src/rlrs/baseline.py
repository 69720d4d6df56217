"""Binary-search baseline over per-letter run tables.

For every letter the index stores the sorted start positions of its runs
and, alongside each start, how many occurrences of the letter precede it.
Rank and select are binary searches over those two arrays; the run-end
vector and the run-head string of the compressed structure are kept as
well (heads only need access) so the same position arithmetic serves
access and run-extent clipping.  Bigger and simpler than the compressed
structure -- it exists as a benchmark baseline and a second independent
oracle.
"""

from __future__ import annotations

import struct
from typing import BinaryIO

import numpy as np
from numba import njit

from .arena import Arena, finalize
from .bitvec import PackedIntArray, _pia_get, _read_exact
from .elias_fano import EliasFanoBitVector, _ef_rank1, _ef_select1
from .header import HeaderString, _hs_access
from .rle_string import _checked, _run_decomposition, _read_fragments, _write_fragment

_R_TAU = 1  # the run-end vector is shared plumbing here, densest sampling

TAG_RUN_ENDS = 1
TAG_HEADS = 2
TAG_STARTS = 5
TAG_COUNTS = 6
TAG_OCCS = 7

# metadata slots
BC_N = 0
BC_SIGMA = 1
BC_R = 2
BC_EF = 3         # metadata base of the run-end vector
BC_HS = 4         # metadata base of the run-head index
BC_STARTS = 5     # metadata base of grouped run starts
BC_COUNTS = 6     # metadata base of preceding-occurrence counts
BC_LBOUNDS = 7    # int64-pool offset of per-letter table bounds
BC_OCCS = 8       # metadata base of per-letter totals


@njit(cache=True)
def _bc_access(U, M, b, i):
    return _hs_access(U, M, M[b + BC_HS], _ef_rank1(U, M, M[b + BC_EF], i - 1))


@njit(cache=True)
def _bc_rank(U, M, b, c, i):
    lb = M[b + BC_LBOUNDS]
    lo = M[lb + c]
    hi = M[lb + c + 1]
    if lo == hi:
        return 0
    bS = M[b + BC_STARTS]
    l, h = lo, hi
    while l < h:
        mid = (l + h) >> 1
        if _pia_get(U, M, bS, mid) <= i:
            l = mid + 1
        else:
            h = mid
    g = l - 1
    if g < lo:
        return 0
    start = _pia_get(U, M, bS, g)
    bR = M[b + BC_EF]
    end = _ef_select1(U, M, bR, _ef_rank1(U, M, bR, start - 1) + 1)  # end of that run
    pos = i if i < end else end
    return _pia_get(U, M, M[b + BC_COUNTS], g) + (pos - start + 1)


@njit(cache=True)
def _bc_select(U, M, b, c, j):
    if j < 1 or j > _pia_get(U, M, M[b + BC_OCCS], c):
        return -1
    lb = M[b + BC_LBOUNDS]
    lo = M[lb + c]
    hi = M[lb + c + 1]
    bC = M[b + BC_COUNTS]
    l, h = lo, hi
    while l < h:
        mid = (l + h) >> 1
        if _pia_get(U, M, bC, mid) < j:
            l = mid + 1
        else:
            h = mid
    g = l - 1
    return _pia_get(U, M, M[b + BC_STARTS], g) + (j - _pia_get(U, M, bC, g) - 1)


@njit(cache=True)
def _bc_access_bulk(U, M, b, idx, out):
    for q in range(idx.shape[0]):
        out[q] = _bc_access(U, M, b, idx[q])


@njit(cache=True)
def _bc_rank_bulk(U, M, b, cs, idx, out):
    for q in range(idx.shape[0]):
        out[q] = _bc_rank(U, M, b, cs[q], idx[q])


@njit(cache=True)
def _bc_select_bulk(U, M, b, cs, js, out):
    for q in range(js.shape[0]):
        out[q] = _bc_select(U, M, b, cs[q], js[q])


class BcgprIndex:
    """Per-letter run-start tables queried by binary search."""

    def __init__(self, symbols, sigma: int | None = None):
        s = np.asarray(symbols, dtype=np.int64)
        if s.ndim != 1:
            raise ValueError("symbols must be one-dimensional")
        if s.size == 0:
            raise ValueError("empty strings have no run decomposition")
        if int(s.min()) < 0:
            raise ValueError("symbols must be non-negative")
        max_sym = int(s.max())
        if sigma is None:
            sigma = max_sym + 1
        elif max_sym >= sigma:
            raise ValueError(f"symbol {max_sym} out of range for sigma={sigma}")

        n = int(s.size)
        ends, starts, head_syms = _run_decomposition(s)
        r = int(ends.size)
        order = np.argsort(head_syms, kind="stable")
        lengths = ends - starts + 1
        grouped_starts = starts[order]
        grouped_lengths = lengths[order]
        pref = np.concatenate(([0], np.cumsum(grouped_lengths)))
        per_letter = np.bincount(head_syms, minlength=sigma).astype(np.int64)
        bounds = np.concatenate(([0], np.cumsum(per_letter))).astype(np.int64)
        counts = pref[:-1] - np.repeat(pref[bounds[:-1]], per_letter)
        occs = pref[bounds[1:]] - pref[bounds[:-1]]

        self.n = n
        self.sigma = int(sigma)
        self.r = r
        self.run_ends = EliasFanoBitVector(ends, n, _R_TAU)
        self.heads = HeaderString(head_syms, sigma, adjacent_distinct=True)
        start_width = max(1, (n - 1).bit_length())
        count_width = max(1, n.bit_length())
        self.starts = PackedIntArray(grouped_starts.astype(np.uint64), start_width)
        self.counts = PackedIntArray(counts.astype(np.uint64), count_width)
        self.occs = PackedIntArray(occs.astype(np.uint64), count_width)
        self.letter_bounds = bounds
        finalize(self)

    def _emit(self, ar: Arena) -> int:
        base_ef = self.run_ends._emit(ar)
        base_hs = self.heads._emit(ar)
        base_starts = self.starts._emit(ar)
        base_counts = self.counts._emit(ar)
        off_bounds = ar.add_m(self.letter_bounds)
        base_occs = self.occs._emit(ar)
        meta = np.array(
            [self.n, self.sigma, self.r, base_ef, base_hs,
             base_starts, base_counts, off_bounds, base_occs],
            dtype=np.int64,
        )
        base = ar.add_m(meta)
        ar.register(self, base)
        return base

    def _set_arena_state(self, U, M, base) -> None:
        self._state = (U, M, base)

    @property
    def state(self):
        return self._state

    def _check_symbol(self, c: int) -> None:
        if not 0 <= c < self.sigma:
            raise ValueError(f"symbol {c} out of range [0, {self.sigma})")

    def access(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"position {i} out of range [0, {self.n})")
        return int(_bc_access(*self._state, i))

    def rank(self, c: int, i: int) -> int:
        self._check_symbol(c)
        if not 0 <= i < self.n:
            raise IndexError(f"rank position {i} out of range [0, {self.n})")
        return int(_bc_rank(*self._state, c, i))

    def select(self, c: int, j: int) -> int:
        self._check_symbol(c)
        return int(_bc_select(*self._state, c, j))

    def count(self, c: int) -> int:
        self._check_symbol(c)
        return int(self.occs[c])

    def access_many(self, idx) -> np.ndarray:
        idx = _checked(idx, self.n, "position")
        out = np.empty(idx.size, dtype=np.int64)
        _bc_access_bulk(*self._state, idx, out)
        return out

    def rank_many(self, cs, idx) -> np.ndarray:
        cs = _checked(cs, self.sigma, "symbol")
        idx = _checked(idx, self.n, "position")
        out = np.empty(idx.size, dtype=np.int64)
        _bc_rank_bulk(*self._state, cs, idx, out)
        return out

    def select_many(self, cs, js) -> np.ndarray:
        cs = _checked(cs, self.sigma, "symbol")
        js = np.asarray(js, dtype=np.int64)
        out = np.empty(js.size, dtype=np.int64)
        _bc_select_bulk(*self._state, cs, js, out)
        return out

    # --- serialization body used inside the shared index container -------

    def write(self, out: BinaryIO) -> dict[int, int]:
        out.write(struct.pack("<QIQ", self.n, self.sigma, self.r))
        sizes: dict[int, int] = {}
        for tag, part in (
            (TAG_RUN_ENDS, self.run_ends),
            (TAG_HEADS, self.heads),
            (TAG_STARTS, self.starts),
            (TAG_COUNTS, self.counts),
            (TAG_OCCS, self.occs),
        ):
            sizes[tag] = _write_fragment(out, tag, part)
        return sizes

    @classmethod
    def read(cls, src: BinaryIO) -> "BcgprIndex":
        n, sigma, r = struct.unpack("<QIQ", _read_exact(src, 20))
        parts = _read_fragments(src, {
            TAG_RUN_ENDS: EliasFanoBitVector.read,
            TAG_HEADS: HeaderString.read,
            TAG_STARTS: PackedIntArray.read,
            TAG_COUNTS: PackedIntArray.read,
            TAG_OCCS: PackedIntArray.read,
        })
        idx = cls.__new__(cls)
        idx.n = n
        idx.sigma = sigma
        idx.r = r
        idx.run_ends = parts[TAG_RUN_ENDS]
        idx.heads = parts[TAG_HEADS]
        idx.starts = parts[TAG_STARTS]
        idx.counts = parts[TAG_COUNTS]
        idx.occs = parts[TAG_OCCS]
        # per-letter table bounds are rebuilt from the run-head string
        heads_syms = idx.heads.access_many(np.arange(r))
        per_letter = np.bincount(heads_syms, minlength=sigma).astype(np.int64)
        idx.letter_bounds = np.concatenate(([0], np.cumsum(per_letter))).astype(np.int64)
        finalize(idx)
        return idx
