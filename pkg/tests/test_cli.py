import numpy as np
import pytest

from rlrs import NaiveSequence
from rlrs.cli import main
from rlrs import formats

from conftest import DEMO_SIGMA, DEMO_STRING


@pytest.fixture()
def demo_seq(tmp_path):
    path = tmp_path / "demo.rlsq"
    formats.write_sequence_file(path, DEMO_STRING, DEMO_SIGMA)
    return path


@pytest.fixture()
def demo_index(tmp_path, demo_seq):
    out = tmp_path / "demo.idx"
    assert main(["build", str(demo_seq), "--tau", "4", "--out", str(out)]) == 0
    return out


class TestGen:
    def test_deterministic_bytes(self, tmp_path):
        a = tmp_path / "a.rlsq"
        b = tmp_path / "b.rlsq"
        args = ["gen", "--n", "25", "--sigma", "4", "--runs", "8", "--seed", "7"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_generates_requested_runs(self, tmp_path):
        out = tmp_path / "g.rlsq"
        assert main(["gen", "--n", "100000", "--sigma", "100", "--runs", "1000",
                     "--seed", "3", "--out", str(out)]) == 0
        s, sigma = formats.read_sequence_file(out)
        assert sigma == 100
        assert 1 + int(np.count_nonzero(s[1:] != s[:-1])) == 1000

    def test_large_gen_build_stats_pipeline(self, tmp_path, capsys):
        seq = tmp_path / "big.rlsq"
        idx = tmp_path / "big.idx"
        assert main(["gen", "--n", "1000000", "--sigma", "100", "--runs", "10000",
                     "--seed", "3", "--out", str(seq)]) == 0
        assert main(["build", str(seq), "--tau", "4", "--out", str(idx)]) == 0
        assert main(["stats", str(idx)]) == 0
        stats = dict(line.split(None, 1)
                     for line in capsys.readouterr().out.strip().splitlines())
        assert stats["r"] == "10000"
        assert stats["n"] == "1000000"
        assert stats["sigma"] == "100"

    def test_infeasible_exits_1(self, tmp_path):
        rc = main(["gen", "--n", "5", "--sigma", "4", "--runs", "9",
                   "--out", str(tmp_path / "x.rlsq")])
        assert rc == 1

    def test_missing_flag_exits_1(self, tmp_path):
        assert main(["gen", "--n", "5"]) == 1


class TestBuild:
    def test_build_and_stats(self, tmp_path, demo_index, capsys):
        assert main(["stats", str(demo_index)]) == 0
        out = capsys.readouterr().out
        stats = dict(line.split(None, 1) for line in out.strip().splitlines())
        assert stats["structure"] == "rlrs"
        assert stats["n"] == "25"
        assert stats["sigma"] == "4"
        assert stats["r"] == "8"
        assert stats["tau"] == "4"
        assert int(stats["bits_total"]) == demo_index.stat().st_size * 8

    def test_build_bcgpr(self, tmp_path, demo_seq):
        out = tmp_path / "demo.bc"
        assert main(["build", str(demo_seq), "--structure", "bcgpr",
                     "--out", str(out)]) == 0
        assert out.read_bytes()[:4] == b"RLBC"

    def test_raw_bytes_input(self, tmp_path):
        raw = tmp_path / "raw.bin"
        raw.write_bytes(bytes(DEMO_STRING.tolist()))
        out = tmp_path / "raw.idx"
        assert main(["build", str(raw), "--raw-bytes", "--out", str(out)]) == 0
        idx = formats.load_index(out)
        assert idx.n == 25
        assert idx.rank(3, 10) == 3

    def test_corrupt_input_exits_2(self, tmp_path):
        bad = tmp_path / "bad.rlsq"
        bad.write_bytes(b"NOPE" + b"\0" * 30)
        assert main(["build", str(bad), "--out", str(tmp_path / "o.idx")]) == 2

    def test_truncated_input_exits_2(self, tmp_path, demo_seq):
        trunc = tmp_path / "trunc.rlsq"
        trunc.write_bytes(demo_seq.read_bytes()[:-2])
        assert main(["build", str(trunc), "--out", str(tmp_path / "o.idx")]) == 2

    def test_missing_file_exits_2(self, tmp_path):
        assert main(["build", str(tmp_path / "none.rlsq"),
                     "--out", str(tmp_path / "o.idx")]) == 2


class TestQuery:
    def test_answers_in_order(self, tmp_path, demo_index, capsys):
        wl = tmp_path / "wl.txt"
        wl.write_text("r 3 10\ns 2 1\na 0\ns 3 6\n")
        assert main(["query", str(demo_index), str(wl)]) == 0
        out = capsys.readouterr().out
        assert out.splitlines() == ["3", "-1", "0", "18"]

    def test_matches_naive_oracle(self, tmp_path, demo_index, capsys):
        nv = NaiveSequence(DEMO_STRING, DEMO_SIGMA)
        lines = []
        expect = []
        for i in range(25):
            lines.append(f"a {i}")
            expect.append(nv.access(i))
        for c in range(4):
            for i in range(0, 25, 3):
                lines.append(f"r {c} {i}")
                expect.append(nv.rank(c, i))
            for j in range(0, 16):
                lines.append(f"s {c} {j}")
                expect.append(nv.select(c, j))
        wl = tmp_path / "big.txt"
        wl.write_text("\n".join(lines) + "\n")
        assert main(["query", str(demo_index), str(wl)]) == 0
        out = capsys.readouterr().out
        assert [int(x) for x in out.split()] == expect

    def test_malformed_line_reports_number(self, tmp_path, demo_index, capsys):
        wl = tmp_path / "badwl.txt"
        wl.write_text("a 0\nz 1 2\n")
        assert main(["query", str(demo_index), str(wl)]) == 2
        err = capsys.readouterr().err
        assert "line 2" in err

    def test_bcgpr_index_served_too(self, tmp_path, demo_seq, capsys):
        out = tmp_path / "demo.bc"
        main(["build", str(demo_seq), "--structure", "bcgpr", "--out", str(out)])
        wl = tmp_path / "wl.txt"
        wl.write_text("r 3 10\n")
        assert main(["query", str(out), str(wl)]) == 0
        assert capsys.readouterr().out.strip() == "3"


class TestBench:
    def test_csv_schema(self, tmp_path, demo_seq, capsys):
        rl = tmp_path / "a.idx"
        bc = tmp_path / "a.bc"
        main(["build", str(demo_seq), "--out", str(rl)])
        main(["build", str(demo_seq), "--structure", "bcgpr", "--out", str(bc)])
        assert main(["bench", str(rl), str(bc), "--queries", "64", "--seed", "1"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        head = lines[0].split(",")
        assert head == ["structure", "dataset", "n", "sigma", "r", "tau",
                        "query_kind", "count", "median_ns", "p95_ns", "bits_total",
                        "bits_per_run", "bits_R", "bits_H", "bits_C", "bits_S"]
        assert len(lines) == 1 + 6  # 3 query kinds x 2 structures
        kinds = [line.split(",")[6] for line in lines[1:]]
        assert kinds == ["access", "rank", "select"] * 2

    def test_csv_to_file(self, tmp_path, demo_seq):
        rl = tmp_path / "a.idx"
        main(["build", str(demo_seq), "--out", str(rl)])
        csv_path = tmp_path / "report.csv"
        assert main(["bench", str(rl), "--queries", "32", "--seed", "5",
                     "--out", str(csv_path)]) == 0
        assert csv_path.read_text().startswith("structure,dataset,")

    def test_same_seed_same_queries(self, tmp_path, demo_seq):
        from rlrs.bench import make_queries
        rl = tmp_path / "a.idx"
        main(["build", str(demo_seq), "--out", str(rl)])
        idx = formats.load_index(rl)
        for kind in ("access", "rank", "select"):
            a = make_queries(idx, kind, 100, seed=9)
            b = make_queries(idx, kind, 100, seed=9)
            for x, y in zip(a, b):
                assert np.array_equal(x, y)

    def test_missing_index_exits_2(self, tmp_path):
        assert main(["bench", str(tmp_path / "none.idx")]) == 2


class TestStats:
    def test_truncated_index_exits_2(self, tmp_path, demo_index, capsys):
        trunc = tmp_path / "trunc.idx"
        trunc.write_bytes(demo_index.read_bytes()[:40])
        assert main(["stats", str(trunc)]) == 2
        assert capsys.readouterr().err

    def test_usage_error_unknown_command(self):
        assert main(["frobnicate"]) == 1
