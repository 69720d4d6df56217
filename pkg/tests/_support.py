"""Randomized equivalence suites shared by module tests and the acceptance run."""

import numpy as np

from rlrs import (
    EliasFanoBitVector,
    HeaderString,
    PlainBitVector,
    PredecessorIndex,
)


def bitvec_suite(cases: int, seed: int = 2001, max_n: int = 10_000) -> None:
    """Every rank/select answer on random bitvectors matches a linear scan."""
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        n = int(rng.integers(1, max_n + 1))
        bits = (rng.random(n) < rng.uniform(0.02, 0.98)).astype(np.uint8)
        v = PlainBitVector(bits)
        cum = np.cumsum(bits)
        idx = np.arange(n)
        assert np.array_equal(v.rank_many(1, idx), cum)
        assert np.array_equal(v.rank_many(0, idx), idx + 1 - cum)
        ones = np.flatnonzero(bits)
        zeros = np.flatnonzero(bits == 0)
        assert np.array_equal(v.select_many(1, np.arange(1, ones.size + 1)), ones)
        assert np.array_equal(v.select_many(0, np.arange(1, zeros.size + 1)), zeros)
        assert v.select(1, 0) == -1
        assert v.select(1, ones.size + 1) == -1
        assert v.select(0, zeros.size + 1) == -1
        # inverse laws on a sample
        if ones.size:
            js = rng.integers(1, ones.size + 1, min(64, ones.size))
            pos = v.select_many(1, js)
            assert np.array_equal(v.rank_many(1, pos), js)


def elias_fano_suite(cases: int, seed: int = 2002) -> None:
    """Sparse vectors agree with the expanded plain array everywhere."""
    rng = np.random.default_rng(seed)
    for trial in range(cases):
        n = int(rng.integers(1, 100_000))
        k = int(rng.integers(1, min(n, 1000) + 1))
        if trial % 3 == 0:
            # cluster positions so buckets overflow the sampling threshold
            window = min(n, max(k, n // 64 + 1))
            pos = np.sort(rng.choice(window, size=min(k, window), replace=False))
        else:
            pos = np.sort(rng.choice(n, size=k, replace=False))
        k = pos.size
        tau = int(rng.choice([1, 4, 16, 32]))
        ef = EliasFanoBitVector(pos, n, tau)
        bits = np.zeros(n, dtype=np.uint8)
        bits[pos] = 1
        cum = np.concatenate(([0], np.cumsum(bits)))
        idx = np.arange(-1, n)
        assert np.array_equal(ef.rank_many(1, idx), cum)
        assert np.array_equal(ef.rank_many(0, idx), np.concatenate(([0], np.arange(1, n + 1) - cum[1:])))
        assert np.array_equal(ef.select1_many(np.arange(1, k + 1)), pos)
        assert ef.select1(0) == -1
        assert ef.select1(k + 1) == -1


def header_suite(cases: int, seed: int = 2003, max_r: int = 10_000) -> None:
    """Wavelet-tree answers equal linear scans over random strings."""
    rng = np.random.default_rng(seed)
    sigmas = np.array([2, 3, 26, 1000])
    for trial in range(cases):
        sigma = int(sigmas[trial % sigmas.size])
        r = int(rng.integers(1, max_r + 1))
        syms = rng.integers(0, sigma, r)
        h = HeaderString(syms, sigma)
        assert np.array_equal(h.access_many(np.arange(r)), syms)
        n_check = min(2000, r * sigma)
        cs = rng.integers(0, sigma, n_check)
        iis = rng.integers(-1, r, n_check)
        expected = np.empty(n_check, dtype=np.int64)
        for c in np.unique(cs):
            mask = cs == c
            pos = np.flatnonzero(syms == c)
            expected[mask] = np.searchsorted(pos, iis[mask], side="right")
        assert np.array_equal(h.rank_many(cs, iis), expected)
        js = rng.integers(0, r + 2, n_check)
        exp_sel = np.full(n_check, -1, dtype=np.int64)
        for c in np.unique(cs):
            mask = cs == c
            pos = np.flatnonzero(syms == c)
            jj = js[mask]
            ok = (jj >= 1) & (jj <= pos.size)
            vals = np.full(jj.size, -1, dtype=np.int64)
            vals[ok] = pos[jj[ok] - 1]
            exp_sel[mask] = vals
        assert np.array_equal(h.select_many(cs, js), exp_sel)


def predecessor_suite(cases: int, seed: int = 2004, max_k: int = 1000) -> None:
    """Binary-search answers match a linear scan, plus boundary laws."""
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        k = int(rng.integers(1, max_k + 1))
        values = np.sort(rng.integers(0, 4 * k, k))
        p = PredecessorIndex(values)
        queries = np.unique(
            np.concatenate((values, values + 1, values - 1,
                            rng.integers(0, 5 * k, 32), [0, 10 ** 9]))
        )
        queries = queries[queries >= 0]
        prev = -1
        for x in queries.tolist():
            got = p.pred_index(x)
            below = np.flatnonzero(values < x)
            expect = int(below[-1]) if below.size else -1
            assert got == expect
            # law: values[i] < x and the next value (if any) is >= x
            if got >= 0:
                assert values[got] < x
                assert got == k - 1 or values[got + 1] >= x
            # monotone in x over the sorted query sequence
            assert got >= prev
            prev = got
