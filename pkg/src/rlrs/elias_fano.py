"""Sparse bitvector over a strictly increasing position set, bucket-encoded.

The represented array of length n with k ones is split into k buckets of
width ceil(n/k) (trailing buckets may be empty).  Per-bucket one counts are
stored unary in a plain bitvector B of length 2k (count zeros, then a
terminating one), and the in-bucket offsets go to a packed array A.  That
gives constant-time select1 by pure arithmetic.

Rank locates the bucket, then counts offsets at or below the in-bucket
position: a binary search when the bucket holds at most `rho` ones, and
otherwise a predecessor lookup over every rho-th sampled offset followed by
a bounded binary search over the gap.  `rho` is twice the sampling
parameter tau, so growing tau trades rank speed for sampling space.
"""

from __future__ import annotations

import struct
from typing import BinaryIO

import numpy as np
from numba import njit, uint64

from .arena import Arena, finalize
from .bitvec import (
    BV_WORDS,
    PackedIntArray,
    PlainBitVector,
    _bv_rank1,
    _bv_select,
    _pia_get,
    _popcount64,
    _pred_last_below,
    _read_exact,
)
from .predecessor import PredecessorIndex

RHO_PER_TAU = 2  # rho = 2 * tau keeps sampled offsets within the 1/tau budget

# metadata slots of an encoded sparse bitvector
EF_N = 0
EF_K = 1
EF_BW = 2         # bucket width
EF_RHO = 3
EF_B = 4          # metadata base of the unary bucket bitvector
EF_A = 5          # metadata base of the packed in-bucket offsets
EF_MARKS = 6      # metadata base of the sampled-entry marks
EF_SAMPLED = 7    # metadata base of the packed sampled offsets


@njit(cache=True)
def _ef_select1(U, M, b, i):
    if i < 1 or i > M[b + EF_K]:
        return -1
    bucket = _bv_select(U, M, M[b + EF_B], 0, i) - i + 1
    return bucket * M[b + EF_BW] + _pia_get(U, M, M[b + EF_A], i - 1)


@njit(cache=True)
def _ef_rank1(U, M, b, i):
    if i < 0:
        return 0
    bw = M[b + EF_BW]
    bB = M[b + EF_B]
    bA = M[b + EF_A]
    bk = i // bw + 1  # 1-based bucket holding position i
    end_b = _bv_select(U, M, bB, 1, bk)
    prev_b = _bv_select(U, M, bB, 1, bk - 1) if bk > 1 else -1
    d = prev_b - bk + 2  # ones in earlier buckets
    ell = end_b - prev_b - 1  # ones in bucket bk
    if ell == 0:
        return d
    p = i - (bk - 1) * bw
    rho = M[b + EF_RHO]
    if ell <= rho:
        lo, hi = d, d + ell
        while lo < hi:
            mid = (lo + hi) >> 1
            if _pia_get(U, M, bA, mid) <= p:
                lo = mid + 1
            else:
                hi = mid
        return lo
    # sampled offsets of this bucket sit contiguously in the sampled array
    bM = M[b + EF_MARKS]
    s_lo = _bv_rank1(U, M, bM, d - 1)
    s_hi = _bv_rank1(U, M, bM, d + ell - 1)
    g = _pred_last_below(U, M, M[b + EF_SAMPLED], s_lo, s_hi, p + 1)
    if g < s_lo:
        return d
    rel = g - s_lo
    base = d + rel * rho
    lo = base + 1
    hi = base + rho
    if hi > d + ell:
        hi = d + ell
    first = lo
    while lo < hi:
        mid = (lo + hi) >> 1
        if _pia_get(U, M, bA, mid) <= p:
            lo = mid + 1
        else:
            hi = mid
    return d + rel * rho + 1 + (lo - first)


@njit(cache=True)
def _ef_run_gap(U, M, b, g):
    # select1(g+1) - select1(g) with the select1(0) = -1 sentinel; the
    # second position usually follows from the first within one word of
    # the unary array, saving a directory search
    if g == 0:
        return _ef_select1(U, M, b, 1) + 1
    bB = M[b + EF_B]
    bw = M[b + EF_BW]
    bA = M[b + EF_A]
    z = _bv_select(U, M, bB, 0, g)
    pos_g = (z - g + 1) * bw + _pia_get(U, M, bA, g - 1)
    nxt = z + 1
    w = (~U[M[bB + BV_WORDS] + (nxt >> 6)]) >> uint64(nxt & 63)
    if w != uint64(0):
        z2 = nxt + _popcount64((w & (uint64(0) - w)) - uint64(1))
    else:
        z2 = _bv_select(U, M, bB, 0, g + 1)
    return (z2 - g) * bw + _pia_get(U, M, bA, g) - pos_g


@njit(cache=True)
def _ef_rank(U, M, b, bit, i):
    if i < 0:
        return 0
    r1 = _ef_rank1(U, M, b, i)
    if bit == 1:
        return r1
    return i + 1 - r1


@njit(cache=True)
def _ef_rank_bulk(U, M, b, bit, idx, out):
    for q in range(idx.shape[0]):
        out[q] = _ef_rank(U, M, b, bit, idx[q])


@njit(cache=True)
def _ef_select1_bulk(U, M, b, js, out):
    for q in range(js.shape[0]):
        out[q] = _ef_select1(U, M, b, js[q])


class EliasFanoBitVector:
    """Bucket-encoded sparse bitvector; select1 in O(1), rank via sampling."""

    def __init__(self, one_positions, n: int, tau: int = 1):
        pos = np.asarray(one_positions, dtype=np.int64)
        if pos.size == 0:
            raise ValueError("at least one set position is required")
        if tau < 1:
            raise ValueError("tau must be >= 1")
        if int(pos[0]) < 0 or int(pos[-1]) >= n:
            raise ValueError("positions out of range [0, n)")
        if pos.size > 1 and np.any(np.diff(pos) <= 0):
            raise ValueError("positions must be strictly increasing")
        k = int(pos.size)
        bucket_width = -(-n // k)
        bucket = pos // bucket_width
        counts = np.bincount(bucket, minlength=k).astype(np.int64)
        bits = np.zeros(2 * k, dtype=np.uint8)
        bits[np.cumsum(counts) + np.arange(k)] = 1
        offsets = (pos - bucket * bucket_width).astype(np.uint64)

        self.n = int(n)
        self.k = k
        self.tau = int(tau)
        self.bucket_width = int(bucket_width)
        self.rho = RHO_PER_TAU * int(tau)
        self.bucket_unary = PlainBitVector(bits)
        self.offsets = PackedIntArray(offsets, max(1, int(bucket_width - 1).bit_length()))
        self._build_sampling(counts, offsets)
        finalize(self)

    def _build_sampling(self, counts: np.ndarray, offsets: np.ndarray) -> None:
        k = self.k
        within = np.arange(k, dtype=np.int64) - np.repeat(
            np.concatenate(([0], np.cumsum(counts)[:-1])), counts
        )
        large = np.repeat(counts > self.rho, counts)
        marks = large & (within % self.rho == 0)
        self.sample_marks = PlainBitVector(marks.astype(np.uint8))
        self.sampled_offsets = PredecessorIndex(
            PackedIntArray(offsets[marks], self.offsets.width)
        )

    def _emit(self, ar: Arena) -> int:
        base_b = self.bucket_unary._emit(ar)
        base_a = self.offsets._emit(ar)
        base_marks = self.sample_marks._emit(ar)
        base_sampled = self.sampled_offsets._emit(ar)
        meta = np.array(
            [self.n, self.k, self.bucket_width, self.rho,
             base_b, base_a, base_marks, base_sampled],
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

    def select1(self, i: int) -> int:
        """Position of the i-th one (1-based), or -1 if out of range."""
        return int(_ef_select1(*self._state, i))

    def rank(self, bit: int, i: int) -> int:
        """Inclusive rank of `bit` at position i; rank(-1) = 0."""
        if bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        if not -1 <= i < self.n:
            raise IndexError(f"rank position {i} out of range [-1, {self.n})")
        return int(_ef_rank(*self._state, bit, i))

    def rank_many(self, bit: int, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size and (int(idx.min()) < -1 or int(idx.max()) >= self.n):
            raise IndexError(f"rank position out of range [-1, {self.n})")
        out = np.empty(idx.size, dtype=np.int64)
        _ef_rank_bulk(*self._state, bit, idx, out)
        return out

    def select1_many(self, js) -> np.ndarray:
        js = np.asarray(js, dtype=np.int64)
        out = np.empty(js.size, dtype=np.int64)
        _ef_select1_bulk(*self._state, js, out)
        return out

    # --- serialization: n u64, k u64, tau u32, then B and A fragments;
    # --- sampling structures are rebuilt on load.
    def write(self, out: BinaryIO) -> int:
        out.write(struct.pack("<QQI", self.n, self.k, self.tau))
        n = 20 + self.bucket_unary.write(out)
        return n + self.offsets.write(out)

    @classmethod
    def read(cls, src: BinaryIO) -> "EliasFanoBitVector":
        n, k, tau = struct.unpack("<QQI", _read_exact(src, 20))
        if k < 1 or tau < 1:
            raise ValueError(f"corrupt sparse bitvector header (k={k}, tau={tau})")
        bucket_unary = PlainBitVector.read(src)
        offsets = PackedIntArray.read(src)
        ef = cls.__new__(cls)
        ef.n = n
        ef.k = k
        ef.tau = tau
        ef.bucket_width = -(-n // k)
        ef.rho = RHO_PER_TAU * tau
        ef.bucket_unary = bucket_unary
        ef.offsets = offsets
        term = np.flatnonzero(bucket_unary.to_bits())
        counts = np.diff(np.concatenate(([-1], term))) - 1
        ef._build_sampling(counts.astype(np.int64), offsets.to_numpy())
        finalize(ef)
        return ef
