"""Run-length compressed rank/select/access over a large-alphabet string.

A string of length n with r maximal runs over [0, sigma) is stored as four
components:

* run_ends     -- sparse bitvector marking the last position of every run
                  (bucket-encoded, see elias_fano);
* heads        -- the run-head symbols, one per run (see header);
* run_counts   -- plain bitvector of length r + sigma holding, per letter,
                  its run count in unary (count zeros, then a one);
* length prefix sums -- every tau-th prefix sum of the run lengths listed
                  letter by letter, packed and searchable by predecessor.

Individual letter-grouped run lengths are never stored: each one is
recovered with a constant number of queries on the other components, and
the sampled prefix sums bound every prefix-sum or predecessor walk by tau
recoveries.  `tau` is the single space/time knob: it drives both the
run-end vector's in-bucket sampling and the prefix-sum sampling.

All queries are read-only; instances are safe for concurrent readers.
"""

from __future__ import annotations

import io
import struct
from typing import BinaryIO

import numpy as np
from numba import njit

from .arena import Arena, finalize
from .bitvec import (
    PackedIntArray,
    PlainBitVector,
    _bv_rank1,
    _bv_select,
    _pia_get,
    _pred_last_below,
    _read_exact,
)
from .elias_fano import EliasFanoBitVector, _ef_rank1, _ef_run_gap, _ef_select1
from .header import HeaderString, _hs_access, _hs_rank, _hs_select
from .predecessor import PredecessorIndex

MAGIC = b"RLRS"
FORMAT_VERSION = 1

# fragment tags inside the serialized container
TAG_RUN_ENDS = 1
TAG_HEADS = 2
TAG_RUN_COUNTS = 3
TAG_LENGTH_SAMPLES = 4

# metadata slots
RLS_N = 0
RLS_SIGMA = 1
RLS_R = 2
RLS_STEP = 3      # sampling step of the grouped-length prefix sums (= tau)
RLS_EF = 4        # metadata base of the run-end vector
RLS_HS = 5        # metadata base of the run-head index
RLS_C = 6         # metadata base of the per-letter run-count bitvector
RLS_SAMPLES = 7   # metadata base of the packed prefix-sum samples


@njit(cache=True)
def _rls_run_length(U, M, b, i):
    # length of the i-th letter-grouped run, recovered from the components
    bC = M[b + RLS_C]
    c = _bv_rank1(U, M, bC, _bv_select(U, M, bC, 0, i + 1))
    j = _bv_select(U, M, bC, 1, c) - c + 1  # runs of smaller letters
    g = _hs_select(U, M, M[b + RLS_HS], c, i - j + 1)  # global run index, 0-based
    return _ef_run_gap(U, M, M[b + RLS_EF], g)


@njit(cache=True)
def _rls_walk_sum(U, M, b, lo, hi):
    # sum of grouped run lengths over indexes [lo, hi), hoisting the
    # per-letter bookkeeping across each contiguous same-letter stretch
    bC = M[b + RLS_C]
    bH = M[b + RLS_HS]
    bR = M[b + RLS_EF]
    total = 0
    idx = lo
    while idx < hi:
        c = _bv_rank1(U, M, bC, _bv_select(U, M, bC, 0, idx + 1))
        j = _bv_select(U, M, bC, 1, c) - c + 1
        group_end = _bv_select(U, M, bC, 1, c + 1) - (c + 1) + 1
        stop = hi if hi < group_end else group_end
        while idx < stop:
            g = _hs_select(U, M, bH, c, idx - j + 1)
            total += _ef_run_gap(U, M, bR, g)
            idx += 1
    return total


@njit(cache=True)
def _rls_prefix_sum(U, M, b, j):
    # sum of the first j letter-grouped run lengths
    if j == 0:
        return 0
    step = M[b + RLS_STEP]
    jp = (j - 1) // step
    t = _pia_get(U, M, M[b + RLS_SAMPLES], jp)
    return t + _rls_walk_sum(U, M, b, jp * step + 1, j)


@njit(cache=True)
def _rls_pred_sum(U, M, b, x):
    # maximal i with grouped prefix sum through i below x (else -1), plus
    # that prefix sum itself
    r = M[b + RLS_R]
    step = M[b + RLS_STEP]
    bs = M[b + RLS_SAMPLES]
    jp = _pred_last_below(U, M, bs, 0, M[bs], x)
    if jp < 0:
        i = -1
        t = 0
    else:
        i = jp * step
        t = _pia_get(U, M, bs, jp)
    # walk at most `step` further lengths, hoisting letter bookkeeping
    bC = M[b + RLS_C]
    bH = M[b + RLS_HS]
    bR = M[b + RLS_EF]
    c = -1
    j = 0
    group_end = -1
    while i + 1 < r:
        idx = i + 1
        if idx >= group_end:
            c = _bv_rank1(U, M, bC, _bv_select(U, M, bC, 0, idx + 1))
            j = _bv_select(U, M, bC, 1, c) - c + 1
            group_end = _bv_select(U, M, bC, 1, c + 1) - (c + 1) + 1
        g = _hs_select(U, M, bH, c, idx - j + 1)
        v = t + _ef_run_gap(U, M, bR, g)
        if v >= x:
            break
        t = v
        i = idx
    return i, t


@njit(cache=True)
def _rls_pred(U, M, b, x):
    return _rls_pred_sum(U, M, b, x)[0]


@njit(cache=True)
def _rls_access(U, M, b, i):
    return _hs_access(U, M, M[b + RLS_HS], _ef_rank1(U, M, M[b + RLS_EF], i - 1))


@njit(cache=True)
def _rls_rank(U, M, b, c, i):
    bC = M[b + RLS_C]
    bH = M[b + RLS_HS]
    bR = M[b + RLS_EF]
    j = _bv_select(U, M, bC, 1, c) - c + 1
    m = _ef_rank1(U, M, bR, i - 1)  # runs fully before position i
    k = _hs_rank(U, M, bH, c, m - 1)
    x = _rls_prefix_sum(U, M, b, j + k) - _rls_prefix_sum(U, M, b, j)
    if _hs_access(U, M, bH, m) == c:
        return x + (i - _ef_select1(U, M, bR, m))
    return x


@njit(cache=True)
def _rls_select(U, M, b, c, i):
    if i < 1:
        return -1
    bC = M[b + RLS_C]
    j = _bv_select(U, M, bC, 1, c) - c + 1
    j2 = _bv_select(U, M, bC, 1, c + 1) - (c + 1) + 1
    t = _rls_prefix_sum(U, M, b, j)
    if i > _rls_prefix_sum(U, M, b, j2) - t:
        return -1
    # the walk's final accumulator is the grouped prefix sum through j+k
    i_pred, t2 = _rls_pred_sum(U, M, b, t + i)
    k = i_pred - j + 1
    if _bv_rank1(U, M, bC, _bv_select(U, M, bC, 0, j + k + 1)) != c:
        return -1  # unreachable once the occurrence guard passed
    p = i - (t2 - t)
    g = _hs_select(U, M, M[b + RLS_HS], c, k + 1)
    return _ef_select1(U, M, M[b + RLS_EF], g) + p


@njit(cache=True)
def _rls_count(U, M, b, c):
    bC = M[b + RLS_C]
    j = _bv_select(U, M, bC, 1, c) - c + 1
    j2 = _bv_select(U, M, bC, 1, c + 1) - (c + 1) + 1
    return _rls_prefix_sum(U, M, b, j2) - _rls_prefix_sum(U, M, b, j)


@njit(cache=True)
def _rls_access_bulk(U, M, b, idx, out):
    for q in range(idx.shape[0]):
        out[q] = _rls_access(U, M, b, idx[q])


@njit(cache=True)
def _rls_rank_bulk(U, M, b, cs, idx, out):
    for q in range(idx.shape[0]):
        out[q] = _rls_rank(U, M, b, cs[q], idx[q])


@njit(cache=True)
def _rls_select_bulk(U, M, b, cs, js, out):
    for q in range(js.shape[0]):
        out[q] = _rls_select(U, M, b, cs[q], js[q])


@njit(cache=True)
def _rls_run_length_bulk(U, M, b, idx, out):
    for q in range(idx.shape[0]):
        out[q] = _rls_run_length(U, M, b, idx[q])


def _run_decomposition(s: np.ndarray):
    n = s.size
    ends = np.concatenate((np.flatnonzero(s[1:] != s[:-1]), [n - 1]))
    starts = np.concatenate(([0], ends[:-1] + 1))
    return ends.astype(np.int64), starts.astype(np.int64), s[starts]


def _checked(values, bound: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64)
    if arr.size and (int(arr.min()) < 0 or int(arr.max()) >= bound):
        raise ValueError(f"{what} out of range [0, {bound})")
    return arr


class RunLengthString:
    """Compressed string answering access, rank and select.

    `sigma` defaults to max symbol + 1; `tau >= 1` trades query time for
    space.  With `verify=True` every recovered grouped run length is
    cross-checked against the explicit lengths before those are discarded.
    """

    def __init__(self, symbols, sigma: int | None = None, tau: int = 4, *, verify: bool = True):
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
        if tau < 1:
            raise ValueError("tau must be >= 1")

        n = int(s.size)
        ends, starts, head_syms = _run_decomposition(s)
        r = int(ends.size)

        self.n = n
        self.sigma = int(sigma)
        self.r = r
        self.tau = int(tau)
        self.run_ends = EliasFanoBitVector(ends, n, tau)
        self.heads = HeaderString(head_syms, sigma, adjacent_distinct=True)
        per_letter = np.bincount(head_syms, minlength=sigma).astype(np.int64)
        c_bits = np.zeros(r + sigma, dtype=np.uint8)
        c_bits[np.cumsum(per_letter) + np.arange(sigma)] = 1
        self.run_counts = PlainBitVector(c_bits)

        lengths = ends - starts + 1
        grouped = lengths[np.argsort(head_syms, kind="stable")]
        grouped_cum = np.cumsum(grouped)
        if int(grouped_cum[-1]) != n:
            raise AssertionError("run lengths do not cover the string")
        sample_vals = grouped_cum[::tau].astype(np.uint64)
        self.length_samples = PredecessorIndex(
            PackedIntArray(sample_vals, max(1, n.bit_length()))
        )
        finalize(self)

        if verify:
            recovered = self.run_length_many(np.arange(r))
            if not np.array_equal(recovered, grouped):
                raise AssertionError("recovered grouped run lengths disagree with builder")

    def _emit(self, ar: Arena) -> int:
        base_ef = self.run_ends._emit(ar)
        base_hs = self.heads._emit(ar)
        base_c = self.run_counts._emit(ar)
        base_samples = self.length_samples._emit(ar)
        meta = np.array(
            [self.n, self.sigma, self.r, self.tau,
             base_ef, base_hs, base_c, base_samples],
            dtype=np.int64,
        )
        base = ar.add_m(meta)
        ar.register(self, base)
        return base

    def _set_arena_state(self, U, M, base) -> None:
        self._state = (U, M, base)

    # --- queries -------------------------------------------------------

    @property
    def state(self):
        return self._state

    def _check_symbol(self, c: int) -> None:
        if not 0 <= c < self.sigma:
            raise ValueError(f"symbol {c} out of range [0, {self.sigma})")

    def access(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"position {i} out of range [0, {self.n})")
        return int(_rls_access(*self._state, i))

    def rank(self, c: int, i: int) -> int:
        """Occurrences of c in positions 0..i inclusive."""
        self._check_symbol(c)
        if not 0 <= i < self.n:
            raise IndexError(f"rank position {i} out of range [0, {self.n})")
        return int(_rls_rank(*self._state, c, i))

    def select(self, c: int, j: int) -> int:
        """Position of the j-th occurrence of c (1-based), or -1."""
        self._check_symbol(c)
        return int(_rls_select(*self._state, c, j))

    def count(self, c: int) -> int:
        """Occurrences of c in the whole string."""
        self._check_symbol(c)
        return int(_rls_count(*self._state, c))

    def run_length(self, i: int) -> int:
        """Length of the i-th run in letter-grouped order, recovered live."""
        if not 0 <= i < self.r:
            raise IndexError(f"run index {i} out of range [0, {self.r})")
        return int(_rls_run_length(*self._state, i))

    def prefix_length_sum(self, j: int) -> int:
        """Sum of the first j letter-grouped run lengths (0 <= j <= r)."""
        if not 0 <= j <= self.r:
            raise IndexError(f"prefix index {j} out of range [0, {self.r}]")
        return int(_rls_prefix_sum(*self._state, j))

    def pred_length_sum(self, x: int) -> int:
        """Maximal i whose letter-grouped prefix sum stays below x, or -1."""
        if x < 1:
            raise ValueError("x must be >= 1")
        return int(_rls_pred(*self._state, x))

    def access_many(self, idx) -> np.ndarray:
        idx = _checked(idx, self.n, "position")
        out = np.empty(idx.size, dtype=np.int64)
        _rls_access_bulk(*self._state, idx, out)
        return out

    def rank_many(self, cs, idx) -> np.ndarray:
        cs = _checked(cs, self.sigma, "symbol")
        idx = _checked(idx, self.n, "position")
        out = np.empty(idx.size, dtype=np.int64)
        _rls_rank_bulk(*self._state, cs, idx, out)
        return out

    def select_many(self, cs, js) -> np.ndarray:
        cs = _checked(cs, self.sigma, "symbol")
        js = np.asarray(js, dtype=np.int64)
        out = np.empty(js.size, dtype=np.int64)
        _rls_select_bulk(*self._state, cs, js, out)
        return out

    def run_length_many(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        out = np.empty(idx.size, dtype=np.int64)
        _rls_run_length_bulk(*self._state, idx, out)
        return out

    # --- serialization container ----------------------------------------
    # magic, version byte, n u64, sigma u32, r u64, tau u32, then tagged
    # fragments (tag u8, payload length u64, payload) for the components.

    def write(self, out: BinaryIO) -> dict[int, int]:
        out.write(MAGIC)
        out.write(struct.pack("<BQIQI", FORMAT_VERSION, self.n, self.sigma, self.r, self.tau))
        sizes: dict[int, int] = {}
        for tag, part in (
            (TAG_RUN_ENDS, self.run_ends),
            (TAG_HEADS, self.heads),
            (TAG_RUN_COUNTS, self.run_counts),
            (TAG_LENGTH_SAMPLES, self.length_samples.values),
        ):
            sizes[tag] = _write_fragment(out, tag, part)
        return sizes

    @classmethod
    def read(cls, src: BinaryIO) -> "RunLengthString":
        magic = _read_exact(src, 4)
        if magic != MAGIC:
            raise ValueError(f"bad magic {magic!r}, expected {MAGIC!r}")
        version, n, sigma, r, tau = struct.unpack("<BQIQI", _read_exact(src, 25))
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported format version {version}")
        parts = _read_fragments(src, {
            TAG_RUN_ENDS: EliasFanoBitVector.read,
            TAG_HEADS: HeaderString.read,
            TAG_RUN_COUNTS: PlainBitVector.read,
            TAG_LENGTH_SAMPLES: PackedIntArray.read,
        })
        rls = cls.__new__(cls)
        rls.n = n
        rls.sigma = sigma
        rls.r = r
        rls.tau = tau
        rls.run_ends = parts[TAG_RUN_ENDS]
        rls.heads = parts[TAG_HEADS]
        rls.run_counts = parts[TAG_RUN_COUNTS]
        rls.length_samples = PredecessorIndex(parts[TAG_LENGTH_SAMPLES])
        finalize(rls)
        return rls


def _write_fragment(out: BinaryIO, tag: int, part) -> int:
    buf = io.BytesIO()
    part.write(buf)
    payload = buf.getvalue()
    out.write(struct.pack("<BQ", tag, len(payload)))
    out.write(payload)
    return len(payload)


def _read_fragments(src: BinaryIO, readers: dict):
    parts = {}
    for _ in range(len(readers)):
        tag, length = struct.unpack("<BQ", _read_exact(src, 9))
        if tag not in readers:
            raise ValueError(f"unknown fragment tag {tag}")
        payload = _read_exact(src, length)
        parts[tag] = readers[tag](io.BytesIO(payload))
    return parts
