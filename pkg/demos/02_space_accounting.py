#!/usr/bin/env python3
"""Measure serialized size against the sampling parameter tau.

Larger tau means sparser prefix-sum and in-bucket samples: the structure
shrinks while rank/select walk a little further per query.  The reference
line r * log2(n * sigma / r) is the leading term the encoding aims for;
the baseline index is included to show what plain per-letter tables cost.
"""

import io

import numpy as np

from rlrs import BcgprIndex, RunLengthString, gen_instance

n, sigma, runs = 2_000_000, 100, 50_000
s = gen_instance(n, sigma, runs, seed=1)
print(f"instance: n={n:,}, sigma={sigma}, runs={runs:,}  (mean run length {n/runs:.0f})")
reference = runs * np.log2(n * sigma / runs)
print(f"reference r*log2(n*sigma/r): {reference/8/1024:.1f} KiB "
      f"({reference/runs:.2f} bits/run)\n")

print(f"{'structure':>12} {'size KiB':>9} {'bits/run':>9}")
for tau in (1, 4, 16, 32):
    buf = io.BytesIO()
    RunLengthString(s, sigma, tau).write(buf)
    bits = buf.getbuffer().nbytes * 8
    print(f"{'rlrs tau=' + str(tau):>12} {bits/8/1024:>9.1f} {bits/runs:>9.2f}")

buf = io.BytesIO()
BcgprIndex(s, sigma).write(buf)
bits = buf.getbuffer().nbytes * 8
print(f"{'bcgpr':>12} {bits/8/1024:>9.1f} {bits/runs:>9.2f}")

print("\nper-component split at tau=32:")
buf = io.BytesIO()
sizes = RunLengthString(s, sigma, 32).write(buf)
names = {1: "run ends", 2: "heads", 3: "run counts", 4: "length samples"}
for tag, payload in sizes.items():
    print(f"  {names[tag]:>14}: {payload*8/runs:6.2f} bits/run")
