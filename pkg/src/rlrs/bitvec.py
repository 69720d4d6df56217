"""Uncompressed bitvector with O(1) rank and fast select, plus a packed int array.

The bitvector keeps its payload in 64-bit little-endian words (bit i of the
array is bit i mod 64 of word i // 64) and a two-level rank directory over
512-bit superblocks: one 32-bit absolute count per superblock plus one
64-bit word packing the seven 9-bit relative counts of its 64-bit blocks.
Select binary-searches the directory between sampled hint positions (every
2^13-th one / zero), then finishes with an in-word table lookup.

Rank is inclusive of position i and rank(-1) = 0; select is 1-based and
returns -1 when the requested occurrence does not exist.  Every other
structure in the package inherits these conventions.

Both structures are immutable after construction and safe for concurrent
readers.
"""

from __future__ import annotations

import struct
from typing import BinaryIO

import numpy as np
from numba import njit, int64, uint64

from .arena import Arena, finalize

WORD_BITS = 64
SUPERBLOCK_BITS = 512
SELECT_SAMPLE = 1 << 13

# metadata slots of a bitvector block inside the int64 pool
BV_N = 0          # number of bits
BV_ONES = 1       # number of set bits
BV_WORDS = 2      # uint64-pool offset of payload words
BV_SUPERS = 3     # uint64-pool offset of packed 32-bit superblock counts
BV_BLOCKREL = 4   # uint64-pool offset of packed 9-bit block counts
BV_H1 = 5         # int64-pool offset of one-hints
BV_NH1 = 6
BV_H0 = 7         # int64-pool offset of zero-hints
BV_NH0 = 8
_BV_META = 9

# metadata slots of a packed-int-array block
PIA_LEN = 0
PIA_WIDTH = 1
PIA_WORDS = 2     # uint64-pool offset of payload words
_PIA_META = 3

# in-byte popcount and select tables for the select fast path
_POP8 = np.array([bin(b).count("1") for b in range(256)], dtype=np.int64)
_SEL8 = np.zeros(256 * 8, dtype=np.int64)
for _b in range(256):
    _t = 0
    for _p in range(8):
        if (_b >> _p) & 1:
            _SEL8[_b * 8 + _t] = _p
            _t += 1
del _b, _t, _p


@njit(cache=True)
def _popcount64(x):
    x = x - ((x >> uint64(1)) & uint64(0x5555555555555555))
    x = (x & uint64(0x3333333333333333)) + ((x >> uint64(2)) & uint64(0x3333333333333333))
    x = (x + (x >> uint64(4))) & uint64(0x0F0F0F0F0F0F0F0F)
    return int64((x * uint64(0x0101010101010101)) >> uint64(56))


@njit(cache=True)
def _select_in_word(w, t):
    # position of the t-th (1-based) set bit of w; caller guarantees it exists
    for byte in range(8):
        b = int64((w >> uint64(8 * byte)) & uint64(0xFF))
        c = _POP8[b]
        if c >= t:
            return 8 * byte + _SEL8[b * 8 + (t - 1)]
        t -= c
    return -1


@njit(cache=True)
def _bv_get(U, M, b, i):
    return int64((U[M[b + BV_WORDS] + (i >> 6)] >> uint64(i & 63)) & uint64(1))


@njit(cache=True)
def _super_count(U, M, b, sb):
    w = U[M[b + BV_SUPERS] + (sb >> 1)]
    return int64((w >> uint64(32 * (sb & 1))) & uint64(0xFFFFFFFF))


@njit(cache=True)
def _bv_rank1(U, M, b, i):
    if i < 0:
        return 0
    sb = i >> 9
    r = _super_count(U, M, b, sb)
    blk = (i >> 6) & 7
    if blk > 0:
        r += int64((U[M[b + BV_BLOCKREL] + sb] >> uint64(9 * (blk - 1))) & uint64(511))
    sh = uint64(63 - (i & 63))
    return r + _popcount64((U[M[b + BV_WORDS] + (i >> 6)] << sh) >> sh)


@njit(cache=True)
def _bv_rank(U, M, b, bit, i):
    if i < 0:
        return 0
    r1 = _bv_rank1(U, M, b, i)
    if bit == 1:
        return r1
    return i + 1 - r1


@njit(cache=True)
def _bv_select(U, M, b, bit, j):
    total = M[b + BV_ONES] if bit == 1 else M[b + BV_N] - M[b + BV_ONES]
    if j < 1 or j > total:
        return -1
    if bit == 1:
        hints = M[b + BV_H1]
        n_hints = M[b + BV_NH1]
    else:
        hints = M[b + BV_H0]
        n_hints = M[b + BV_NH0]
    h = (j - 1) >> 13
    lo = M[hints + h] >> 9
    if h + 1 < n_hints:
        hi = M[hints + h + 1] >> 9
    else:
        hi = (M[b + BV_N] - 1) >> 9
    # largest superblock with fewer than j occurrences before it
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        before = _super_count(U, M, b, mid)
        if bit == 0:
            before = (mid << 9) - before
        if before < j:
            lo = mid
        else:
            hi = mid - 1
    sb = lo
    before = _super_count(U, M, b, sb)
    if bit == 0:
        before = (sb << 9) - before
    rem = j - before
    # scan the seven packed relative counts for the containing block
    v = U[M[b + BV_BLOCKREL] + sb]
    blk = 0
    for t in range(1, 8):
        rel = int64((v >> uint64(9 * (t - 1))) & uint64(511))
        if bit == 0:
            rel = (t << 6) - rel
        if rel < rem:
            blk = t
        else:
            break
    if blk > 0:
        rel = int64((v >> uint64(9 * (blk - 1))) & uint64(511))
        if bit == 0:
            rel = (blk << 6) - rel
        rem -= rel
    w = U[M[b + BV_WORDS] + (sb << 3) + blk]
    if bit == 0:
        w = ~w
    return (sb << 9) + (blk << 6) + _select_in_word(w, rem)


@njit(cache=True)
def _bv_rank_bulk(U, M, b, bit, idx, out):
    for q in range(idx.shape[0]):
        out[q] = _bv_rank(U, M, b, bit, idx[q])


@njit(cache=True)
def _bv_select_bulk(U, M, b, bit, js, out):
    for q in range(js.shape[0]):
        out[q] = _bv_select(U, M, b, bit, js[q])


class PlainBitVector:
    """Immutable bit array with rank/select directories.

    Accepts a '0'/'1' string, an iterable of 0/1 ints, or a numpy array.
    Length is limited to 2^32 - 1 bits (superblock counts are 32-bit).
    """

    def __init__(self, bits=()):
        if isinstance(bits, str):
            arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
        else:
            arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("bits must be one-dimensional")
        if arr.size and (arr.max() > 1):
            raise ValueError("bits must be 0 or 1")
        if arr.size >= 1 << 32:
            raise ValueError("bitvector too long (>= 2^32 bits)")
        self._init_from_bits(arr)
        finalize(self)

    def _init_from_bits(self, arr: np.ndarray) -> None:
        n = int(arr.size)
        padded_len = -(-max(n, 1) // SUPERBLOCK_BITS) * SUPERBLOCK_BITS
        padded = np.zeros(padded_len, dtype=np.uint8)
        padded[:n] = arr
        words = np.packbits(padded, bitorder="little").view(np.uint64)
        nw = words.size
        n_sb = nw // 8
        counts = np.bitwise_count(words).astype(np.int64)
        cum = np.zeros(nw + 1, dtype=np.int64)
        np.cumsum(counts, out=cum[1:])
        supers32 = cum[:nw:8].astype(np.uint32)
        if supers32.size % 2:
            supers32 = np.concatenate((supers32, np.zeros(1, np.uint32)))
        rel = cum[:nw].reshape(n_sb, 8) - cum[:nw:8].reshape(n_sb, 1)
        blockrel = np.zeros(n_sb, dtype=np.uint64)
        for j in range(1, 8):
            blockrel |= rel[:, j].astype(np.uint64) << np.uint64(9 * (j - 1))
        ones_pos = np.flatnonzero(arr)

        self._n_bits = n
        self._n_ones = int(cum[nw])
        self._words = words
        self._supers_packed = supers32.view(np.uint64)
        self._blockrel = blockrel
        self._hints1 = ones_pos[::SELECT_SAMPLE].astype(np.int64)
        self._hints0 = np.flatnonzero(arr == 0)[::SELECT_SAMPLE].astype(np.int64)

    def _emit(self, ar: Arena) -> int:
        off_words = ar.add_u(self._words)
        off_supers = ar.add_u(self._supers_packed)
        off_blockrel = ar.add_u(self._blockrel)
        off_h1 = ar.add_m(self._hints1)
        off_h0 = ar.add_m(self._hints0)
        meta = np.array(
            [self._n_bits, self._n_ones, off_words, off_supers, off_blockrel,
             off_h1, self._hints1.size, off_h0, self._hints0.size],
            dtype=np.int64,
        )
        base = ar.add_m(meta)
        ar.register(self, base)
        return base

    def _set_arena_state(self, U, M, base) -> None:
        self._state = (U, M, base)

    def __len__(self) -> int:
        return self._n_bits

    @property
    def n_ones(self) -> int:
        return self._n_ones

    @property
    def state(self):
        return self._state

    def get(self, i: int) -> int:
        if not 0 <= i < self._n_bits:
            raise IndexError(f"bit index {i} out of range [0, {self._n_bits})")
        return int(_bv_get(*self._state, i))

    def rank(self, bit: int, i: int) -> int:
        """Occurrences of `bit` in positions 0..i inclusive; rank(-1) = 0."""
        if bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        if not -1 <= i < self._n_bits:
            raise IndexError(f"rank position {i} out of range [-1, {self._n_bits})")
        return int(_bv_rank(*self._state, bit, i))

    def select(self, bit: int, j: int) -> int:
        """Position of the j-th (1-based) `bit`, or -1 if it does not exist."""
        if bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        return int(_bv_select(*self._state, bit, j))

    def rank_many(self, bit: int, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size and (int(idx.min()) < -1 or int(idx.max()) >= self._n_bits):
            raise IndexError(f"rank position out of range [-1, {self._n_bits})")
        out = np.empty(idx.size, dtype=np.int64)
        _bv_rank_bulk(*self._state, bit, idx, out)
        return out

    def select_many(self, bit: int, js) -> np.ndarray:
        js = np.asarray(js, dtype=np.int64)
        out = np.empty(js.size, dtype=np.int64)
        _bv_select_bulk(*self._state, bit, js, out)
        return out

    def to_bits(self) -> np.ndarray:
        bits = np.unpackbits(self._words.view(np.uint8), bitorder="little")
        return bits[: self._n_bits]

    @property
    def directory_bits(self) -> int:
        """Bits spent on the two-level rank directory (32 + 64 per superblock)."""
        return self._blockrel.size * (32 + 64)

    @property
    def hint_bits(self) -> int:
        return (self._hints1.size + self._hints0.size) * 64

    # --- serialization fragment: n_bits, then ceil(n/64) payload words,
    # --- all 64-bit little-endian; directories are rebuilt on load.
    def write(self, out: BinaryIO) -> int:
        n_words = -(-self._n_bits // WORD_BITS)
        payload = self._words[:n_words].tobytes()
        out.write(struct.pack("<Q", self._n_bits))
        out.write(payload)
        return 8 + len(payload)

    @classmethod
    def read(cls, src: BinaryIO) -> "PlainBitVector":
        (n_bits,) = struct.unpack("<Q", _read_exact(src, 8))
        n_words = -(-n_bits // WORD_BITS)
        raw = _read_exact(src, 8 * n_words)
        words = np.frombuffer(raw, dtype="<u8")
        bits = np.unpackbits(words.view(np.uint8), bitorder="little")[:n_bits]
        return cls(bits)


@njit(cache=True)
def _pia_get(U, M, b, i):
    width = M[b + PIA_WIDTH]
    off = i * width
    sh = off & 63
    v = U[M[b + PIA_WORDS] + (off >> 6)] >> uint64(sh)
    if sh + width > 64:
        v |= U[M[b + PIA_WORDS] + (off >> 6) + 1] << uint64(64 - sh)
    if width == 64:
        return int64(v)
    return int64(v & ((uint64(1) << uint64(width)) - uint64(1)))


@njit(cache=True)
def _pia_pack(values, width, words):
    for i in range(values.shape[0]):
        off = i * width
        w = off >> 6
        sh = off & 63
        words[w] |= values[i] << uint64(sh)
        if sh + width > 64:
            words[w + 1] = values[i] >> uint64(64 - sh)


@njit(cache=True)
def _pia_unpack(U, M, b, out):
    for i in range(out.shape[0]):
        out[i] = _pia_get(U, M, b, i)


@njit(cache=True)
def _pred_last_below(U, M, b, lo, hi, x):
    # largest index in [lo, hi) whose value is < x, else lo - 1
    l, h = lo, hi
    while l < h:
        mid = (l + h) >> 1
        if _pia_get(U, M, b, mid) < x:
            l = mid + 1
        else:
            h = mid
    return l - 1


class PackedIntArray:
    """Fixed-width array of non-negative ints packed into 64-bit words."""

    def __init__(self, values, width: int):
        if not 1 <= width <= 64:
            raise ValueError(f"width {width} not in [1, 64]")
        values = np.asarray(values, dtype=np.uint64)
        if values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if values.size and width < 64 and int(values.max()) >= 1 << width:
            raise ValueError(f"value {int(values.max())} does not fit in {width} bits")
        self._init_parts(int(values.size), width, values)
        finalize(self)

    def _init_parts(self, length: int, width: int, values: np.ndarray) -> None:
        self._length = length
        self._width = width
        n_words = -(-length * width // 64) + 1  # +1 spare word for cross-boundary reads
        words = np.zeros(n_words, dtype=np.uint64)
        _pia_pack(values, width, words)
        self._words = words

    def _emit(self, ar: Arena) -> int:
        off_words = ar.add_u(self._words)
        base = ar.add_m(np.array([self._length, self._width, off_words], dtype=np.int64))
        ar.register(self, base)
        return base

    def _set_arena_state(self, U, M, base) -> None:
        self._state = (U, M, base)

    def __len__(self) -> int:
        return self._length

    @property
    def width(self) -> int:
        return self._width

    @property
    def bits(self) -> int:
        """Logical payload size in bits."""
        return self._length * self._width

    @property
    def state(self):
        return self._state

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self._length:
            raise IndexError(f"index {i} out of range [0, {self._length})")
        return int(_pia_get(*self._state, i))

    def to_numpy(self) -> np.ndarray:
        out = np.empty(self._length, dtype=np.uint64)
        _pia_unpack(*self._state, out)
        return out

    # --- serialization fragment: length u64, width u8, payload words u64 LE
    def write(self, out: BinaryIO) -> int:
        n_words = -(-self._length * self._width // 64)
        payload = self._words[:n_words].tobytes()
        out.write(struct.pack("<QB", self._length, self._width))
        out.write(payload)
        return 9 + len(payload)

    @classmethod
    def read(cls, src: BinaryIO) -> "PackedIntArray":
        length, width = struct.unpack("<QB", _read_exact(src, 9))
        if not 1 <= width <= 64:
            raise ValueError(f"corrupt packed array width {width}")
        n_words = -(-length * width // 64)
        raw = _read_exact(src, 8 * n_words)
        arr = cls.__new__(cls)
        arr._length = length
        arr._width = width
        words = np.zeros(n_words + 1, dtype=np.uint64)
        words[:n_words] = np.frombuffer(raw, dtype="<u8")
        arr._words = words
        finalize(arr)
        return arr


def _read_exact(src: BinaryIO, count: int) -> bytes:
    data = src.read(count)
    if len(data) != count:
        raise ValueError(f"truncated input: wanted {count} bytes, got {len(data)}")
    return data
