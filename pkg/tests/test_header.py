import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rlrs import HeaderString, SymbolIndex

from _support import header_suite
from conftest import DEMO_HEADS


class TestWorkedExample:
    # DEMO_HEADS is the run-head sequence a,b,a,d,a,d,b,a as 0..3

    def test_shape(self):
        h = HeaderString(DEMO_HEADS, 4)
        assert h.r == 8
        assert h.levels == 2
        assert isinstance(h, SymbolIndex)

    def test_access(self):
        h = HeaderString(DEMO_HEADS, 4)
        assert h.access(6) == 1
        assert h.access(0) == 0
        assert h.access(3) == 3

    def test_rank(self):
        h = HeaderString(DEMO_HEADS, 4)
        assert h.rank(0, 4) == 3
        assert h.rank(2, 7) == 0
        assert h.rank(3, 4) == 1
        assert h.rank(0, -1) == 0

    def test_select(self):
        h = HeaderString(DEMO_HEADS, 4)
        assert h.select(3, 2) == 5
        assert h.select(0, 0) == -1
        assert h.select(1, 3) == -1

    def test_count(self):
        h = HeaderString(DEMO_HEADS, 4)
        assert [h.count(c) for c in range(4)] == [4, 2, 0, 2]


class TestEdges:
    def test_single_symbol_alphabet(self):
        h = HeaderString([0, 0, 0], 1)
        assert h.levels == 0
        assert h.access(1) == 0
        assert h.rank(0, 2) == 3
        assert h.select(0, 3) == 2
        assert h.select(0, 4) == -1

    def test_absent_symbols_are_legal(self):
        h = HeaderString([5, 1], 1000)
        assert h.rank(999, 1) == 0
        assert h.select(999, 1) == -1

    def test_symbol_out_of_range_rejected(self):
        h = HeaderString([0, 1], 2)
        with pytest.raises(ValueError):
            h.rank(2, 0)
        with pytest.raises(ValueError):
            HeaderString([3], sigma=3)

    def test_adjacent_distinct_enforced_when_asked(self):
        HeaderString([0, 1, 0], 2, adjacent_distinct=True)
        with pytest.raises(ValueError):
            HeaderString([0, 0], 2, adjacent_distinct=True)

    def test_large_alphabet_round_trip(self):
        rng = np.random.default_rng(4)
        syms = rng.integers(0, 1000, 10_000)
        h = HeaderString(syms, 1000)
        assert np.array_equal(h.access_many(np.arange(10_000)), syms)


class TestProperties:
    @given(st.lists(st.integers(0, 25), min_size=1, max_size=120))
    @settings(max_examples=60)
    def test_inverse_laws(self, syms):
        h = HeaderString(syms, 26)
        arr = np.array(syms)
        for c in set(syms):
            total = int((arr == c).sum())
            for j in range(1, total + 1):
                pos = h.select(c, j)
                assert h.rank(c, pos) == j
                assert h.access(pos) == c

    @given(st.lists(st.integers(0, 7), min_size=1, max_size=80))
    @settings(max_examples=40)
    def test_ranks_partition_positions(self, syms):
        h = HeaderString(syms, 8)
        for i in range(len(syms)):
            assert sum(h.rank(c, i) for c in range(8)) == i + 1

    def test_randomized_equivalence(self):
        header_suite(cases=60, max_r=3000)


def test_serialization_round_trip():
    rng = np.random.default_rng(11)
    for sigma in (1, 2, 26, 1000):
        syms = rng.integers(0, sigma, 500)
        h = HeaderString(syms, sigma)
        buf = io.BytesIO()
        h.write(buf)
        buf.seek(0)
        h2 = HeaderString.read(buf)
        assert h2.sigma == sigma
        assert np.array_equal(h2.access_many(np.arange(500)), syms)
        cs = rng.integers(0, sigma, 200)
        iis = rng.integers(-1, 500, 200)
        assert np.array_equal(h2.rank_many(cs, iis), h.rank_many(cs, iis))
