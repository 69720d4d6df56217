#!/usr/bin/env python3
"""Time individual queries on a large instance, per kind and tau.

Each cell is the median of per-query wall times over three repetitions of
a seeded random workload (the first pass is a warm-up).  Access never
touches the sampled walks, so it is flat in tau; rank and select pay for
sparser samples with longer walks.
"""

from rlrs import RunLengthString, BcgprIndex, gen_instance
from rlrs.bench import time_queries, warmup

warmup()

n, sigma, runs = 5_000_000, 100, 100_000
s = gen_instance(n, sigma, runs, seed=9)
print(f"instance: n={n:,}, sigma={sigma}, runs={runs:,}")
print(f"{'structure':>12} {'access us':>10} {'rank us':>10} {'select us':>10}")

for tau in (4, 16, 32):
    q = RunLengthString(s, sigma, tau)
    row = [time_queries(q, kind, 20_000, seed=5)[0] / 1000
           for kind in ("access", "rank", "select")]
    print(f"{'rlrs tau=' + str(tau):>12} {row[0]:>10.2f} {row[1]:>10.2f} {row[2]:>10.2f}")

b = BcgprIndex(s, sigma)
row = [time_queries(b, kind, 20_000, seed=5)[0] / 1000
       for kind in ("access", "rank", "select")]
print(f"{'bcgpr':>12} {row[0]:>10.2f} {row[1]:>10.2f} {row[2]:>10.2f}")
print("\n(bcgpr is faster per query and several times larger on disk;"
      "\n see 02_space_accounting.py for the size side of the trade)")
