"""Command-line front end: gen, build, query, bench, stats.

Exit codes: 0 success, 1 usage error, 2 data or I/O error.
"""

from __future__ import annotations

import argparse
import struct
import sys
from pathlib import Path

from . import bench as bench_mod
from . import formats
from .baseline import BcgprIndex
from .oracle import gen_instance
from .rle_string import RunLengthString

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rlrs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a deterministic run-structured sequence file")
    p.add_argument("--n", type=int, required=True, help="sequence length")
    p.add_argument("--sigma", type=int, required=True, help="alphabet bound")
    p.add_argument("--runs", type=int, required=True, help="exact number of maximal runs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("build", help="build and serialize an index from a sequence file")
    p.add_argument("input", type=Path)
    p.add_argument("--tau", type=int, default=4, help="sampling parameter (rlrs only)")
    p.add_argument("--structure", choices=("rlrs", "bcgpr"), default="rlrs")
    p.add_argument("--raw-bytes", action="store_true",
                   help="treat input as headerless bytes, sigma = max byte + 1")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("query", help="answer a workload file against an index")
    p.add_argument("index", type=Path)
    p.add_argument("workload", type=Path)

    p = sub.add_parser("bench", help="time random queries and emit a CSV report")
    p.add_argument("indexes", type=Path, nargs="+")
    p.add_argument("--queries", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")

    p = sub.add_parser("stats", help="report per-component space of an index")
    p.add_argument("index", type=Path)
    return parser


def _cmd_gen(args) -> int:
    try:
        s = gen_instance(args.n, args.sigma, args.runs, args.seed)
    except ValueError as exc:
        print(f"rlrs gen: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        formats.write_sequence_file(args.out, s, args.sigma)
    except (ValueError, OSError) as exc:
        print(f"rlrs gen: {exc}", file=sys.stderr)
        return DATA_ERROR
    print(f"wrote {args.out} (n={args.n}, sigma={args.sigma}, runs={args.runs})",
          file=sys.stderr)
    return 0


def _cmd_build(args) -> int:
    if args.tau < 1:
        print("rlrs build: --tau must be >= 1", file=sys.stderr)
        return USAGE_ERROR
    try:
        s, sigma = formats.read_sequence_file(args.input, raw_bytes=args.raw_bytes)
        if args.structure == "rlrs":
            index = RunLengthString(s, sigma, args.tau)
        else:
            index = BcgprIndex(s, sigma)
        formats.save_index(args.out, index)
    except (ValueError, OSError) as exc:
        print(f"rlrs build: {exc}", file=sys.stderr)
        return DATA_ERROR
    print(f"wrote {args.out} (structure={args.structure}, n={index.n}, "
          f"sigma={index.sigma}, r={index.r})", file=sys.stderr)
    return 0


def _cmd_query(args) -> int:
    try:
        index = formats.load_index(args.index)
        with open(args.workload, "r", encoding="ascii") as handle:
            kinds, a1, a2 = formats.parse_workload(handle, index.n, index.sigma)
        answers = formats.evaluate_workload(index, kinds, a1, a2)
    except (ValueError, OSError) as exc:
        print(f"rlrs query: {exc}", file=sys.stderr)
        return DATA_ERROR
    sys.stdout.write("\n".join(str(int(a)) for a in answers))
    if answers.size:
        sys.stdout.write("\n")
    return 0


def _cmd_bench(args) -> int:
    if args.queries < 1:
        print("rlrs bench: --queries must be >= 1", file=sys.stderr)
        return USAGE_ERROR
    try:
        rows = bench_mod.run_bench(args.indexes, args.queries, args.seed)
        csv_text = bench_mod.rows_to_csv(rows)
        if args.out is None:
            sys.stdout.write(csv_text)
        else:
            Path(args.out).write_text(csv_text)
    except (ValueError, OSError) as exc:
        print(f"rlrs bench: {exc}", file=sys.stderr)
        return DATA_ERROR
    return 0


def _cmd_stats(args) -> int:
    try:
        report = bench_mod.space_report(args.index)
    except (ValueError, OSError, struct.error) as exc:
        print(f"rlrs stats: {exc}", file=sys.stderr)
        return DATA_ERROR
    tau = report["tau"]
    lines = [
        f"structure {report['structure']}",
        f"n {report['n']}",
        f"sigma {report['sigma']}",
        f"r {report['r']}",
        f"tau {'' if tau is None else tau}",
        f"bits_total {report['bits_total']}",
        f"bits_per_run {report['bits_per_run']:.3f}",
    ]
    name_to_csv = {"run_ends": "bits_R", "heads": "bits_H",
                   "run_counts": "bits_C", "length_samples": "bits_S"}
    for name, bits in report["component_bits"].items():
        lines.append(f"{name_to_csv.get(name, 'bits_' + name)} {bits}")
    lines.append(f"container_overhead_bits {report['container_overhead_bits']}")
    lines.append(f"reference_bits_total {report['reference_bits_total']:.3f}")
    lines.append(f"reference_bits_per_run {report['reference_bits_per_run']:.3f}")
    print("\n".join(lines))
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "build": _cmd_build,
    "query": _cmd_query,
    "bench": _cmd_bench,
    "stats": _cmd_stats,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
