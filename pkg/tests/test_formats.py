import numpy as np
import pytest

from rlrs import BcgprIndex, RunLengthString, gen_instance
from rlrs import formats
from rlrs.bench import space_report

from conftest import DEMO_SIGMA, DEMO_STRING


class TestSequenceFile:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "seq.rlsq"
        formats.write_sequence_file(path, DEMO_STRING, DEMO_SIGMA)
        s, sigma = formats.read_sequence_file(path)
        assert sigma == DEMO_SIGMA
        assert np.array_equal(s, DEMO_STRING)
        assert path.read_bytes()[:4] == b"RLSQ"

    @pytest.mark.parametrize("sigma,width", [(2, 8), (256, 8), (257, 16), (70_000, 32)])
    def test_width_selection(self, tmp_path, sigma, width):
        assert formats.symbol_width(sigma) == width
        path = tmp_path / "w.rlsq"
        formats.write_sequence_file(path, [0, 1, 0], sigma)
        assert path.read_bytes()[5] == width

    def test_raw_bytes_mode(self, tmp_path):
        path = tmp_path / "raw.bin"
        path.write_bytes(bytes([3, 1, 1, 7]))
        s, sigma = formats.read_sequence_file(path, raw_bytes=True)
        assert sigma == 8
        assert list(s) == [3, 1, 1, 7]

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.rlsq"
        path.write_bytes(b"NOPE" + b"\0" * 20)
        with pytest.raises(ValueError, match="magic"):
            formats.read_sequence_file(path)

    def test_truncated_payload(self, tmp_path):
        path = tmp_path / "trunc.rlsq"
        formats.write_sequence_file(path, DEMO_STRING, DEMO_SIGMA)
        data = path.read_bytes()
        path.write_bytes(data[:-3])
        with pytest.raises(ValueError, match="expected"):
            formats.read_sequence_file(path)

    def test_symbol_out_of_declared_range(self, tmp_path):
        path = tmp_path / "range.rlsq"
        with pytest.raises(ValueError):
            formats.write_sequence_file(path, [0, 5], 4)


class TestIndexContainer:
    def test_rlrs_round_trip(self, tmp_path):
        q = RunLengthString(DEMO_STRING, DEMO_SIGMA, tau=4)
        path = tmp_path / "demo.idx"
        formats.save_index(path, q)
        assert path.read_bytes()[:4] == b"RLRS"
        q2 = formats.load_index(path)
        assert isinstance(q2, RunLengthString)
        assert q2.rank(3, 10) == 3

    def test_baseline_round_trip(self, tmp_path):
        b = BcgprIndex(DEMO_STRING, DEMO_SIGMA)
        path = tmp_path / "demo.bc"
        formats.save_index(path, b)
        assert path.read_bytes()[:4] == b"RLBC"
        b2 = formats.load_index(path)
        assert isinstance(b2, BcgprIndex)
        assert b2.select(3, 6) == 18

    def test_unknown_magic(self, tmp_path):
        path = tmp_path / "junk.idx"
        path.write_bytes(b"JUNKJUNKJUNK")
        with pytest.raises(ValueError, match="magic"):
            formats.load_index(path)

    def test_truncated_index(self, tmp_path):
        q = RunLengthString(DEMO_STRING, DEMO_SIGMA)
        path = tmp_path / "t.idx"
        formats.save_index(path, q)
        path.write_bytes(path.read_bytes()[:50])
        with pytest.raises(ValueError):
            formats.load_index(path)


class TestWorkload:
    def test_parse_and_evaluate(self):
        q = RunLengthString(DEMO_STRING, DEMO_SIGMA)
        text = ["a 0", "r 3 10", "s 2 1", "", "s 3 6"]
        kinds, a1, a2 = formats.parse_workload(text, q.n, q.sigma)
        assert kinds.tolist() == [0, 1, 2, 2]
        answers = formats.evaluate_workload(q, kinds, a1, a2)
        assert answers.tolist() == [0, 3, -1, 18]

    @pytest.mark.parametrize("line,msg", [
        ("x 1", "unrecognized"),
        ("a", "unrecognized"),
        ("a zz", "invalid literal"),
        ("a 25", "out of range"),
        ("r 4 0", "out of range"),
        ("r 0 25", "out of range"),
        ("s 4 1", "out of range"),
    ])
    def test_malformed_lines_report_position(self, line, msg):
        with pytest.raises(ValueError, match=r"workload line 2") as excinfo:
            formats.parse_workload(["a 0", line], 25, 4)
        assert msg in str(excinfo.value)

    def test_select_any_j_allowed(self):
        kinds, a1, a2 = formats.parse_workload(["s 0 999999", "s 0 0"], 25, 4)
        assert kinds.size == 2


class TestSpaceReport:
    def test_accounting_identity(self, tmp_path):
        s = gen_instance(5000, 16, 500, seed=2)
        for struct_obj, name in ((RunLengthString(s, 16, 4), "rlrs"),
                                 (BcgprIndex(s, 16), "bcgpr")):
            path = tmp_path / f"{name}.idx"
            formats.save_index(path, struct_obj)
            rep = space_report(path)
            assert rep["structure"] == name
            assert rep["bits_total"] == path.stat().st_size * 8
            assert rep["bits_total"] == (
                sum(rep["component_bits"].values()) + rep["container_overhead_bits"]
            )
            assert rep["n"] == 5000
            assert rep["r"] == 500

    def test_demo_component_sizes(self, tmp_path):
        q = RunLengthString(DEMO_STRING, DEMO_SIGMA, tau=4)
        path = tmp_path / "demo.idx"
        formats.save_index(path, q)
        rep = space_report(path)
        assert rep["r"] == 8
        assert rep["tau"] == 4
        # run-count bitvector: 12 logical bits serialized as length + 1 word
        assert rep["component_bits"]["run_counts"] == (8 + 8) * 8
        assert len(q.run_counts) == 12
