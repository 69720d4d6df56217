"""On-disk formats: sequence files, index containers, query workloads.

Sequence files ("RLSQ") hold fixed-width little-endian symbols with an
explicit alphabet bound.  Index containers are the structures' own
serializations, dispatched by magic: "RLRS" for the compressed run-length
string, "RLBC" for the binary-search baseline.  Workloads are text, one
query per line: `a <i>`, `r <c> <i>`, `s <c> <j>`.
"""

from __future__ import annotations

import io
import struct
from pathlib import Path

import numpy as np

from .baseline import BcgprIndex
from .rle_string import RunLengthString

SEQ_MAGIC = b"RLSQ"
SEQ_VERSION = 1
BASELINE_MAGIC = b"RLBC"
BASELINE_VERSION = 1

_WIDTH_DTYPES = {8: "<u1", 16: "<u2", 32: "<u4"}


def symbol_width(sigma: int) -> int:
    """Narrowest supported symbol width (in bits) for an alphabet bound."""
    if sigma <= 1 << 8:
        return 8
    if sigma <= 1 << 16:
        return 16
    if sigma <= 1 << 32:
        return 32
    raise ValueError(f"sigma {sigma} too large for a sequence file")


def write_sequence_file(path, symbols, sigma: int) -> None:
    s = np.asarray(symbols)
    if s.size and (int(s.min()) < 0 or int(s.max()) >= sigma):
        raise ValueError("symbols out of range for declared sigma")
    width = symbol_width(sigma)
    with open(path, "wb") as out:
        out.write(SEQ_MAGIC)
        out.write(struct.pack("<BBQI", SEQ_VERSION, width, s.size, sigma))
        out.write(s.astype(_WIDTH_DTYPES[width]).tobytes())


def read_sequence_file(path, raw_bytes: bool = False):
    """Load a sequence file; returns (symbols, sigma).

    With `raw_bytes=True` the file is taken as headerless bytes and sigma
    is inferred as max byte + 1.
    """
    data = Path(path).read_bytes()
    if raw_bytes:
        if not data:
            raise ValueError(f"{path}: empty raw byte file")
        s = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
        return s, int(s.max()) + 1
    if len(data) < 18:
        raise ValueError(f"{path}: truncated sequence file header")
    if data[:4] != SEQ_MAGIC:
        raise ValueError(f"{path}: bad magic {data[:4]!r}, expected {SEQ_MAGIC!r}")
    version, width, n, sigma = struct.unpack("<BBQI", data[4:18])
    if version != SEQ_VERSION:
        raise ValueError(f"{path}: unsupported sequence file version {version}")
    if width not in _WIDTH_DTYPES:
        raise ValueError(f"{path}: unsupported symbol width {width}")
    expected = 18 + n * (width // 8)
    if len(data) != expected:
        raise ValueError(f"{path}: expected {expected} bytes, found {len(data)}")
    s = np.frombuffer(data, dtype=_WIDTH_DTYPES[width], offset=18).astype(np.int64)
    if s.size and int(s.max()) >= sigma:
        raise ValueError(f"{path}: symbol {int(s.max())} out of declared range {sigma}")
    return s, int(sigma)


def save_index(path, structure) -> None:
    with open(path, "wb") as out:
        if isinstance(structure, RunLengthString):
            structure.write(out)
        elif isinstance(structure, BcgprIndex):
            out.write(BASELINE_MAGIC)
            out.write(struct.pack("<B", BASELINE_VERSION))
            structure.write(out)
        else:
            raise TypeError(f"cannot serialize {type(structure).__name__}")


def load_index(path):
    data = Path(path).read_bytes()
    if len(data) < 5:
        raise ValueError(f"{path}: truncated index file")
    magic = data[:4]
    try:
        if magic == b"RLRS":
            return RunLengthString.read(io.BytesIO(data))
        if magic == BASELINE_MAGIC:
            version = data[4]
            if version != BASELINE_VERSION:
                raise ValueError(f"unsupported baseline container version {version}")
            return BcgprIndex.read(io.BytesIO(data[5:]))
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc
    raise ValueError(f"{path}: unknown index magic {magic!r}")


def parse_workload(lines, n: int, sigma: int):
    """Parse workload text into (kinds, first_args, second_args) arrays.

    kinds: 0 = access, 1 = rank, 2 = select.  Raises ValueError with the
    offending line number on malformed or out-of-bounds entries.
    """
    kinds_list: list[int] = []
    a1: list[int] = []
    a2: list[int] = []
    for lineno, line in enumerate(lines, start=1):
        parts = line.split()
        if not parts:
            continue
        op = parts[0]
        try:
            if op == "a" and len(parts) == 2:
                i = int(parts[1])
                if not 0 <= i < n:
                    raise ValueError(f"position {i} out of range [0, {n})")
                kinds_list.append(0)
                a1.append(i)
                a2.append(0)
            elif op == "r" and len(parts) == 3:
                c, i = int(parts[1]), int(parts[2])
                if not 0 <= c < sigma:
                    raise ValueError(f"symbol {c} out of range [0, {sigma})")
                if not 0 <= i < n:
                    raise ValueError(f"position {i} out of range [0, {n})")
                kinds_list.append(1)
                a1.append(c)
                a2.append(i)
            elif op == "s" and len(parts) == 3:
                c, j = int(parts[1]), int(parts[2])
                if not 0 <= c < sigma:
                    raise ValueError(f"symbol {c} out of range [0, {sigma})")
                kinds_list.append(2)
                a1.append(c)
                a2.append(j)
            else:
                raise ValueError(f"unrecognized query {line.strip()!r}")
        except ValueError as exc:
            raise ValueError(f"workload line {lineno}: {exc}") from None
    return (
        np.array(kinds_list, dtype=np.int64),
        np.array(a1, dtype=np.int64),
        np.array(a2, dtype=np.int64),
    )


def evaluate_workload(index, kinds, a1, a2) -> np.ndarray:
    """Answer parsed workload queries in input order."""
    out = np.empty(kinds.size, dtype=np.int64)
    acc = kinds == 0
    rnk = kinds == 1
    sel = kinds == 2
    if acc.any():
        out[acc] = index.access_many(a1[acc])
    if rnk.any():
        out[rnk] = index.rank_many(a1[rnk], a2[rnk])
    if sel.any():
        out[sel] = index.select_many(a1[sel], a2[sel])
    return out
