"""access / rank / select over the run-head string, one symbol per run.

The default realization is a balanced, pointerless wavelet tree: level l
holds the l-th most significant symbol bit for the sequence stably sorted
by its l leading bits, with all levels living in one concatenated plain
bitvector, explicit node boundary offsets per level, and the global rank
at every node start precomputed so each level costs at most one rank and
one select.

The query surface is the small protocol below, so an alternative index
over the same alphabet can be swapped in without touching callers.
"""

from __future__ import annotations

import abc
import struct
from typing import BinaryIO

import numpy as np
from numba import njit

from .arena import Arena, finalize
from .bitvec import PlainBitVector, PackedIntArray, _bv_get, _bv_rank1, _bv_select, _read_exact

# metadata slots of a run-head index
HS_SIGMA = 0
HS_R = 1
HS_LEVELS = 2
HS_BV = 3         # metadata base of the concatenated level bitvector
HS_BOUNDS = 4     # int64-pool offset of flattened node boundaries
HS_LVLOFF = 5     # int64-pool offset of per-level bounds offsets
HS_NODERANK = 6   # int64-pool offset of global rank1 before each node start


class SymbolIndex(abc.ABC):
    """Minimal query protocol a run-head index has to provide."""

    @abc.abstractmethod
    def access(self, i: int) -> int: ...

    @abc.abstractmethod
    def rank(self, c: int, i: int) -> int: ...

    @abc.abstractmethod
    def select(self, c: int, j: int) -> int: ...


@njit(cache=True)
def _hs_access(U, M, b, i):
    levels = M[b + HS_LEVELS]
    if levels == 0:
        return 0
    r = M[b + HS_R]
    bv = M[b + HS_BV]
    bounds = M[b + HS_BOUNDS]
    lvloff = M[b + HS_LVLOFF]
    noderank = M[b + HS_NODERANK]
    pos = i
    pref = 0
    for l in range(levels):
        slot = M[lvloff + l] + pref
        s = M[bounds + slot]
        g = l * r + pos
        ones_before = _bv_rank1(U, M, bv, g - 1) - M[noderank + slot]
        if _bv_get(U, M, bv, g) == 1:
            pref = 2 * pref + 1
            pos = M[bounds + M[lvloff + l + 1] + pref] + ones_before
        else:
            pref = 2 * pref
            pos = M[bounds + M[lvloff + l + 1] + pref] + (pos - s) - ones_before
    return pref


@njit(cache=True)
def _hs_rank(U, M, b, c, i):
    if i < 0:
        return 0
    levels = M[b + HS_LEVELS]
    if levels == 0:
        return i + 1
    r = M[b + HS_R]
    bv = M[b + HS_BV]
    bounds = M[b + HS_BOUNDS]
    lvloff = M[b + HS_LVLOFF]
    noderank = M[b + HS_NODERANK]
    cnt = i + 1
    pref = 0
    for l in range(levels):
        if cnt == 0:
            return 0
        slot = M[lvloff + l] + pref
        s = M[bounds + slot]
        ones = _bv_rank1(U, M, bv, l * r + s + cnt - 1) - M[noderank + slot]
        if (c >> (levels - 1 - l)) & 1:
            cnt = ones
            pref = 2 * pref + 1
        else:
            cnt = cnt - ones
            pref = 2 * pref
    return cnt


@njit(cache=True)
def _hs_select(U, M, b, c, j):
    if j < 1:
        return -1
    levels = M[b + HS_LEVELS]
    r = M[b + HS_R]
    if levels == 0:
        return j - 1 if j <= r else -1
    bv = M[b + HS_BV]
    bounds = M[b + HS_BOUNDS]
    lvloff = M[b + HS_LVLOFF]
    noderank = M[b + HS_NODERANK]
    leaf = M[lvloff + levels] + c
    if j > M[bounds + leaf + 1] - M[bounds + leaf]:
        return -1
    rel = j - 1
    for l in range(levels - 1, -1, -1):
        child = c >> (levels - 1 - l)
        bit = child & 1
        slot = M[lvloff + l] + (child >> 1)
        s = M[bounds + slot]
        ones_before = M[noderank + slot]
        before = ones_before if bit == 1 else (l * r + s) - ones_before
        pos = _bv_select(U, M, bv, bit, before + rel + 1)
        rel = pos - (l * r + s)
    return rel


@njit(cache=True)
def _hs_access_bulk(U, M, b, idx, out):
    for q in range(idx.shape[0]):
        out[q] = _hs_access(U, M, b, idx[q])


@njit(cache=True)
def _hs_rank_bulk(U, M, b, cs, idx, out):
    for q in range(idx.shape[0]):
        out[q] = _hs_rank(U, M, b, cs[q], idx[q])


@njit(cache=True)
def _hs_select_bulk(U, M, b, cs, js, out):
    for q in range(js.shape[0]):
        out[q] = _hs_select(U, M, b, cs[q], js[q])


class HeaderString(SymbolIndex):
    """Wavelet-tree index over a symbol sequence from [0, sigma).

    `sigma` is the effective alphabet bound (max symbol + 1 unless the
    caller passes a larger one); absent symbols are legal query arguments.
    """

    def __init__(self, symbols, sigma: int | None = None, *, adjacent_distinct: bool = False):
        syms = np.asarray(symbols, dtype=np.int64)
        if syms.ndim != 1:
            raise ValueError("symbols must be one-dimensional")
        max_sym = int(syms.max()) if syms.size else 0
        if syms.size and int(syms.min()) < 0:
            raise ValueError("symbols must be non-negative")
        if sigma is None:
            sigma = max_sym + 1
        elif syms.size and max_sym >= sigma:
            raise ValueError(f"symbol {max_sym} out of range for sigma={sigma}")
        if sigma < 1:
            raise ValueError("sigma must be >= 1")
        if adjacent_distinct and syms.size > 1 and np.any(syms[1:] == syms[:-1]):
            raise ValueError("adjacent symbols must differ")

        self.sigma = int(sigma)
        self.r = int(syms.size)
        self.levels = (self.sigma - 1).bit_length()
        self._build(syms)
        finalize(self)

    def _build(self, syms: np.ndarray) -> None:
        levels, r = self.levels, self.r
        all_bits = np.empty(levels * r, dtype=np.uint8)
        for l in range(levels):
            # level l holds bit l of the sequence stably sorted by its l
            # leading bits, so every node is one contiguous stable group
            arr = syms if l == 0 else syms[np.argsort(syms >> (levels - l), kind="stable")]
            all_bits[l * r : (l + 1) * r] = ((arr >> (levels - 1 - l)) & 1).astype(np.uint8)
        self._bv = PlainBitVector(all_bits)
        hist = np.bincount(syms, minlength=1 << levels) if r else np.zeros(1 << levels, np.int64)
        bounds = []
        lvl_off = np.zeros(levels + 1, dtype=np.int64)
        off = 0
        for l in range(levels + 1):
            group = hist.reshape(1 << l, -1).sum(axis=1)
            bounds.append(np.concatenate(([0], np.cumsum(group))))
            lvl_off[l] = off
            off += (1 << l) + 1
        self._bounds = np.concatenate(bounds).astype(np.int64)
        self._lvl_off = lvl_off
        # global ones before each node start, per (level, prefix) slot
        node_rank = np.zeros(self._bounds.size, dtype=np.int64)
        for l in range(levels):
            starts = l * r + self._bounds[lvl_off[l] : lvl_off[l] + (1 << l) + 1]
            node_rank[lvl_off[l] : lvl_off[l] + (1 << l) + 1] = self._bv.rank_many(
                1, starts - 1
            )
        self._node_rank = node_rank

    def _emit(self, ar: Arena) -> int:
        base_bv = self._bv._emit(ar)
        off_bounds = ar.add_m(self._bounds)
        off_lvloff = ar.add_m(self._lvl_off)
        off_noderank = ar.add_m(self._node_rank)
        meta = np.array(
            [self.sigma, self.r, self.levels, base_bv, off_bounds, off_lvloff, off_noderank],
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

    def __len__(self) -> int:
        return self.r

    def _check_symbol(self, c: int) -> None:
        if not 0 <= c < self.sigma:
            raise ValueError(f"symbol {c} out of range [0, {self.sigma})")

    def access(self, i: int) -> int:
        if not 0 <= i < self.r:
            raise IndexError(f"position {i} out of range [0, {self.r})")
        return int(_hs_access(*self._state, i))

    def rank(self, c: int, i: int) -> int:
        self._check_symbol(c)
        if not -1 <= i < self.r:
            raise IndexError(f"rank position {i} out of range [-1, {self.r})")
        return int(_hs_rank(*self._state, c, i))

    def select(self, c: int, j: int) -> int:
        self._check_symbol(c)
        return int(_hs_select(*self._state, c, j))

    def count(self, c: int) -> int:
        """Occurrences of symbol c."""
        self._check_symbol(c)
        off = self._lvl_off[self.levels]
        return int(self._bounds[off + c + 1] - self._bounds[off + c])

    def _checked_symbols(self, cs) -> np.ndarray:
        cs = np.asarray(cs, dtype=np.int64)
        if cs.size and (int(cs.min()) < 0 or int(cs.max()) >= self.sigma):
            raise ValueError(f"symbol out of range [0, {self.sigma})")
        return cs

    def access_many(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size and (int(idx.min()) < 0 or int(idx.max()) >= self.r):
            raise IndexError(f"position out of range [0, {self.r})")
        out = np.empty(idx.size, dtype=np.int64)
        _hs_access_bulk(*self._state, idx, out)
        return out

    def rank_many(self, cs, idx) -> np.ndarray:
        cs = self._checked_symbols(cs)
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size and (int(idx.min()) < -1 or int(idx.max()) >= self.r):
            raise IndexError(f"rank position out of range [-1, {self.r})")
        out = np.empty(idx.size, dtype=np.int64)
        _hs_rank_bulk(*self._state, cs, idx, out)
        return out

    def select_many(self, cs, js) -> np.ndarray:
        cs = self._checked_symbols(cs)
        js = np.asarray(js, dtype=np.int64)
        out = np.empty(js.size, dtype=np.int64)
        _hs_select_bulk(*self._state, cs, js, out)
        return out

    # --- serialization: sigma u32, r u64, per-level bitvector fragments,
    # --- then per-level node boundary offset arrays.
    def write(self, out: BinaryIO) -> int:
        out.write(struct.pack("<IQ", self.sigma, self.r))
        n = 12
        bits = self._bv.to_bits()
        for l in range(self.levels):
            n += PlainBitVector(bits[l * self.r : (l + 1) * self.r]).write(out)
        width = max(1, self.r.bit_length())
        for l in range(self.levels + 1):
            off = self._lvl_off[l]
            vals = self._bounds[off : off + (1 << l) + 1].astype(np.uint64)
            n += PackedIntArray(vals, width).write(out)
        return n

    @classmethod
    def read(cls, src: BinaryIO) -> "HeaderString":
        sigma, r = struct.unpack("<IQ", _read_exact(src, 12))
        if sigma < 1:
            raise ValueError(f"corrupt header string (sigma={sigma})")
        levels = (sigma - 1).bit_length()
        hs = cls.__new__(cls)
        hs.sigma = sigma
        hs.r = r
        hs.levels = levels
        all_bits = np.empty(levels * r, dtype=np.uint8)
        for l in range(levels):
            level_bv = PlainBitVector.read(src)
            if len(level_bv) != r:
                raise ValueError(f"level {l} bitvector has {len(level_bv)} bits, wanted {r}")
            all_bits[l * r : (l + 1) * r] = level_bv.to_bits()
        hs._bv = PlainBitVector(all_bits)
        bounds = []
        lvl_off = np.zeros(levels + 1, dtype=np.int64)
        off = 0
        for l in range(levels + 1):
            part = PackedIntArray.read(src).to_numpy().astype(np.int64)
            if part.size != (1 << l) + 1:
                raise ValueError(f"level {l} bounds have {part.size} entries")
            bounds.append(part)
            lvl_off[l] = off
            off += (1 << l) + 1
        hs._bounds = np.concatenate(bounds)
        hs._lvl_off = lvl_off
        node_rank = np.zeros(hs._bounds.size, dtype=np.int64)
        for l in range(levels):
            starts = l * r + hs._bounds[lvl_off[l] : lvl_off[l] + (1 << l) + 1]
            node_rank[lvl_off[l] : lvl_off[l] + (1 << l) + 1] = hs._bv.rank_many(1, starts - 1)
        hs._node_rank = node_rank
        finalize(hs)
        return hs
