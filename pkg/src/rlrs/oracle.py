"""Reference implementation over the uncompressed sequence, plus test data.

`NaiveSequence` answers access/rank/select straight from per-letter sorted
occurrence positions -- slow to build, trivially correct, and independent
of every compressed structure in the package.  `gen_instance` produces
deterministic sequences with an exact number of maximal runs, and the
string-counting pair validates the run-combinatorics formula by exhaustive
enumeration at small sizes.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

ENUMERATION_CAP = 10**7  # exhaustive mode refuses sigma**n beyond this


class NaiveSequence:
    """Ground-truth access/rank/select over a plain symbol array."""

    def __init__(self, symbols, sigma: int | None = None):
        s = np.asarray(symbols, dtype=np.int64)
        max_sym = int(s.max()) if s.size else 0
        if sigma is None:
            sigma = max_sym + 1
        elif s.size and max_sym >= sigma:
            raise ValueError(f"symbol {max_sym} out of range for sigma={sigma}")
        self.symbols = s
        self.n = int(s.size)
        self.sigma = int(sigma)
        self._positions = [np.flatnonzero(s == c) for c in range(self.sigma)]

    def _check_symbol(self, c: int) -> None:
        if not 0 <= c < self.sigma:
            raise ValueError(f"symbol {c} out of range [0, {self.sigma})")

    def access(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"position {i} out of range [0, {self.n})")
        return int(self.symbols[i])

    def rank(self, c: int, i: int) -> int:
        self._check_symbol(c)
        if not 0 <= i < self.n:
            raise IndexError(f"rank position {i} out of range [0, {self.n})")
        return int(np.searchsorted(self._positions[c], i, side="right"))

    def select(self, c: int, j: int) -> int:
        self._check_symbol(c)
        pos = self._positions[c]
        if j < 1 or j > pos.size:
            return -1
        return int(pos[j - 1])

    def count(self, c: int) -> int:
        self._check_symbol(c)
        return int(self._positions[c].size)

    def rank_many(self, cs, idx) -> np.ndarray:
        cs = np.asarray(cs, dtype=np.int64)
        idx = np.asarray(idx, dtype=np.int64)
        out = np.empty(idx.size, dtype=np.int64)
        for c in np.unique(cs):
            mask = cs == c
            out[mask] = np.searchsorted(self._positions[c], idx[mask], side="right")
        return out

    def select_many(self, cs, js) -> np.ndarray:
        cs = np.asarray(cs, dtype=np.int64)
        js = np.asarray(js, dtype=np.int64)
        out = np.full(js.size, -1, dtype=np.int64)
        for c in np.unique(cs):
            mask = cs == c
            pos = self._positions[c]
            jj = js[mask]
            valid = (jj >= 1) & (jj <= pos.size)
            res = np.full(jj.size, -1, dtype=np.int64)
            res[valid] = pos[jj[valid] - 1]
            out[mask] = res
        return out


def gen_instance(n: int, sigma: int, target_runs: int, seed: int) -> np.ndarray:
    """Deterministic sequence with exactly `target_runs` maximal runs.

    Run lengths are geometric draws with mean n / target_runs, repaired at
    the tail so they sum to n; adjacent run heads always differ.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= target_runs <= n:
        raise ValueError(f"target_runs {target_runs} not in [1, {n}]")
    if sigma < 1 or (target_runs >= 2 and sigma < 2):
        raise ValueError(f"sigma {sigma} infeasible for {target_runs} runs")

    rng = np.random.default_rng(seed)
    m = target_runs
    lengths = rng.geometric(min(1.0, m / n), size=m).astype(np.int64)
    # repair: clamp from the tail so every run keeps length >= 1 and the
    # total is exactly n
    total = int(lengths.sum())
    if total < n:
        lengths[-1] += n - total
    elif total > n:
        budget = n - m  # extra symbols available beyond one per run
        excess = np.cumsum(lengths - 1)
        over = excess > budget
        if over.any():
            first = int(np.argmax(over))
            lengths[first] = budget - (int(excess[first - 1]) if first else 0) + 1
            lengths[first + 1 :] = 1

    heads = np.empty(m, dtype=np.int64)
    heads[0] = rng.integers(0, sigma)
    if m > 1:
        draws = rng.integers(0, sigma - 1, size=m - 1)
        for i in range(1, m):
            heads[i] = draws[i - 1] + (draws[i - 1] >= heads[i - 1])
    return np.repeat(heads, lengths)


def count_strings_with_runs(n: int, sigma: int, r: int, *, check: bool = False) -> int:
    """Number of length-n strings over [0, sigma) with exactly r runs.

    Closed form: C(n-1, r-1) * sigma * (sigma-1)^(r-1).  With `check=True`
    the value is verified against exhaustive enumeration (small n only).
    """
    if n < 1 or r < 1 or r > n:
        return 0
    value = math.comb(n - 1, r - 1) * sigma * (sigma - 1) ** (r - 1)
    if check:
        brute = enumerate_strings_with_runs(n, sigma, r)
        if brute != value:
            raise AssertionError(
                f"enumeration {brute} != formula {value} for n={n}, sigma={sigma}, r={r}"
            )
    return value


def enumerate_strings_with_runs(n: int, sigma: int, r: int) -> int:
    """Count by generating every string; requires sigma**n within the cap."""
    if sigma**n > ENUMERATION_CAP:
        raise ValueError(f"sigma**n = {sigma**n} exceeds enumeration cap {ENUMERATION_CAP}")
    count = 0
    for word in itertools.product(range(sigma), repeat=n):
        runs = 1 + sum(1 for a, b in zip(word, word[1:]) if a != b)
        if runs == r:
            count += 1
    return count
