"""Benchmark timing and space accounting for serialized indexes.

Timing follows a fixed protocol: a deterministic random workload per query
kind, one untimed warm pass, then at least three timed repetitions with
every query measured individually; the reported figures are the median of
the per-repetition medians and of the per-repetition 95th percentiles.

Space accounting walks the serialized container and attributes payload
bits to components, so totals always reconcile with the file size.
"""

from __future__ import annotations

import csv
import io
import struct
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .baseline import BcgprIndex
from .formats import BASELINE_MAGIC, load_index
from .rle_string import RunLengthString

QUERY_KINDS = ("access", "rank", "select")

_FRAGMENT_NAMES = {
    1: "run_ends",
    2: "heads",
    3: "run_counts",
    4: "length_samples",
    5: "starts",
    6: "counts",
    7: "occs",
}

# CSV columns for benchmark reports, in order
_CSV_FIELDS = (
    "structure", "dataset", "n", "sigma", "r", "tau", "query_kind", "count",
    "median_ns", "p95_ns", "bits_total", "bits_per_run",
    "bits_R", "bits_H", "bits_C", "bits_S",
)


@dataclass
class BenchRow:
    structure: str
    dataset: str
    n: int
    sigma: int
    r: int
    tau: int | None
    query_kind: str
    count: int
    median_ns: float
    p95_ns: float
    bits_total: int
    bits_per_run: float
    bits_R: int
    bits_H: int
    bits_C: int
    bits_S: int


def space_report(path) -> dict:
    """Per-component space accounting for a serialized index file."""
    data = Path(path).read_bytes()
    total_bits = len(data) * 8
    if len(data) < 29:
        raise ValueError(f"{path}: truncated index header")
    if data[:4] == b"RLRS":
        structure = "rlrs"
        version, n, sigma, r, tau = struct.unpack("<BQIQI", data[4:29])
        offset = 29
    elif data[:4] == BASELINE_MAGIC:
        structure = "bcgpr"
        n, sigma, r = struct.unpack("<QIQ", data[5:25])
        tau = None
        offset = 25
    else:
        raise ValueError(f"{path}: unknown index magic {data[:4]!r}")

    component_bits: dict[str, int] = {}
    expected = 4 if structure == "rlrs" else 5
    while offset < len(data):
        if offset + 9 > len(data):
            raise ValueError(f"{path}: truncated fragment header at byte {offset}")
        tag, length = struct.unpack("<BQ", data[offset : offset + 9])
        if offset + 9 + length > len(data):
            raise ValueError(f"{path}: fragment {tag} extends past end of file")
        name = _FRAGMENT_NAMES.get(tag, f"tag{tag}")
        component_bits[name] = length * 8
        offset += 9 + length
    if len(component_bits) != expected:
        raise ValueError(f"{path}: expected {expected} fragments, found {len(component_bits)}")

    report = {
        "structure": structure,
        "n": n,
        "sigma": sigma,
        "r": r,
        "tau": tau,
        "bits_total": total_bits,
        "bits_per_run": total_bits / r,
        "container_overhead_bits": total_bits - sum(component_bits.values()),
        "component_bits": component_bits,
        "reference_bits_total": r * np.log2(n * sigma / r),
        "reference_bits_per_run": float(np.log2(n * sigma / r)),
    }
    return report


def make_queries(index, kind: str, count: int, seed: int):
    """Deterministic query workload of one kind for a loaded index."""
    kind_id = QUERY_KINDS.index(kind)
    rng = np.random.default_rng([seed, kind_id])
    n, sigma = index.n, index.sigma
    if kind == "access":
        return (rng.integers(0, n, count),)
    cs = rng.integers(0, sigma, count)
    if kind == "rank":
        return cs, rng.integers(0, n, count)
    occs = np.array([index.count(c) for c in range(sigma)], dtype=np.int64)
    bound = np.maximum(occs[cs], 1)
    js = 1 + (rng.random(count) * bound).astype(np.int64)
    return cs, js


def _scalar_query(index, kind: str):
    return {"access": index.access, "rank": index.rank, "select": index.select}[kind]


def _bulk_query(index, kind: str):
    return {"access": index.access_many, "rank": index.rank_many, "select": index.select_many}[kind]


def time_queries(index, kind: str, count: int, seed: int, reps: int = 3):
    """(median_ns, p95_ns) per query, median-of-medians over `reps` passes."""
    args = make_queries(index, kind, count, seed)
    _bulk_query(index, kind)(*args)  # warm pass: JIT and caches
    fn = _scalar_query(index, kind)
    scalar_args = list(zip(*(a.tolist() for a in args)))
    medians, p95s = [], []
    clock = time.perf_counter_ns
    for _ in range(max(3, reps)):
        times = np.empty(len(scalar_args), dtype=np.int64)
        if len(args) == 1:
            for q, (i,) in enumerate(scalar_args):
                t0 = clock()
                fn(i)
                times[q] = clock() - t0
        else:
            for q, (c, i) in enumerate(scalar_args):
                t0 = clock()
                fn(c, i)
                times[q] = clock() - t0
        medians.append(float(np.median(times)))
        p95s.append(float(np.percentile(times, 95)))
    return float(np.median(medians)), float(np.median(p95s))


def run_bench(index_paths, query_count: int, seed: int, reps: int = 3) -> list[BenchRow]:
    rows = []
    for path in index_paths:
        index = load_index(path)
        report = space_report(path)
        comp = report["component_bits"]
        name = "rlrs" if isinstance(index, RunLengthString) else "bcgpr"
        for kind in QUERY_KINDS:
            med, p95 = time_queries(index, kind, query_count, seed, reps)
            rows.append(BenchRow(
                structure=name,
                dataset=Path(path).stem,
                n=index.n,
                sigma=index.sigma,
                r=index.r,
                tau=index.tau if isinstance(index, RunLengthString) else None,
                query_kind=kind,
                count=query_count,
                median_ns=round(med, 1),
                p95_ns=round(p95, 1),
                bits_total=report["bits_total"],
                bits_per_run=report["bits_per_run"],
                bits_R=comp.get("run_ends", 0),
                bits_H=comp.get("heads", 0),
                bits_C=comp.get("run_counts", 0),
                bits_S=comp.get("length_samples", 0),
            ))
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_FIELDS)
    for row in rows:
        rec = []
        for field in _CSV_FIELDS:
            value = getattr(row, field)
            rec.append("" if value is None else value)
        writer.writerow(rec)
    return buf.getvalue()


def warmup() -> None:
    """Compile every query entry point on tiny instances."""
    s = np.array([0, 0, 1, 2, 2, 0], dtype=np.int64)
    pair = np.zeros(2, np.int64)
    for index in (RunLengthString(s, 3, 1), BcgprIndex(s, 3)):
        index.access(3)
        index.rank(2, 5)
        index.select(1, 1)
        index.count(1)
        index.access_many(np.arange(6))
        index.rank_many(pair, np.array([1, 5]))
        index.select_many(pair, np.array([1, 2]))
    q = RunLengthString(s, 3, 1)
    q.run_length(0)
    q.prefix_length_sum(2)
    q.pred_length_sum(3)
    bv = q.run_counts
    bv.get(0)
    bv.rank(1, 2)
    bv.select(0, 1)
    bv.rank_many(1, pair)
    bv.select_many(1, pair)
    ef = q.run_ends
    ef.select1(1)
    ef.rank(1, 2)
    ef.rank_many(1, pair)
    ef.select1_many(pair)
    hs = q.heads
    hs.access(0)
    hs.rank(0, 1)
    hs.select(0, 1)
    hs.access_many(pair)
    hs.rank_many(pair, pair)
    hs.select_many(pair, pair)
    q.length_samples.pred_index(1)
    q.length_samples.values[0]
    q.run_length_many(np.arange(q.r))
