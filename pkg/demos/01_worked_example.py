#!/usr/bin/env python3
"""Walk through the compressed representation on a small four-letter string.

The 25-symbol string below has eight maximal runs.  We build the structure,
print every component, and then trace a rank and a select query by hand so
the arithmetic is visible.
"""

import numpy as np

from rlrs import NaiveSequence, RunLengthString

letters = "abadadba"  # run heads, in order
s = np.array([0]*4 + [1]*3 + [0] + [3]*5 + [0]*5 + [3]*2 + [1] + [0]*4)
text = "".join("abcd"[c] for c in s)
print(f"input ({len(s)} symbols, alphabet a..d): {text}")

q = RunLengthString(s, sigma=4, tau=4)
print(f"runs: r = {q.r}")

# component 1: run-end positions, held in the bucket-encoded sparse vector
ends = [q.run_ends.select1(i) for i in range(1, q.r + 1)]
print(f"run ends            : {ends}")
print(f"  bucket width      : {q.run_ends.bucket_width}")
print(f"  unary bucket bits : {''.join(map(str, q.run_ends.bucket_unary.to_bits()))}")
print(f"  in-bucket offsets : {[int(v) for v in q.run_ends.offsets.to_numpy()]}")

# component 2: run heads (one symbol per run, adjacent heads distinct)
heads = [q.heads.access(i) for i in range(q.r)]
print(f"run heads           : {''.join('abcd'[c] for c in heads)}")

# component 3: per-letter run counts in unary (count zeros, then a one)
print(f"run-count bits      : {''.join(map(str, q.run_counts.to_bits()))}")

# component 4 is implicit: run lengths grouped by letter are recovered live
grouped = [q.run_length(i) for i in range(q.r)]
print(f"grouped run lengths : {grouped}  (a-runs, then b, then d)")
print(f"prefix sums         : {[int(v) for v in np.cumsum(grouped)]}")

print()
print("rank_d(10): how many d's in positions 0..10?")
print(f"  -> {q.rank(3, 10)}  (d-run covering 8..12 contributes positions 8,9,10)")

print("select_d(6): where is the sixth d?")
print(f"  -> {q.select(3, 6)}  (five d's in the first d-run, so one into the second)")

# cross-check everything against a naive scan
nv = NaiveSequence(s, 4)
assert all(q.access(i) == nv.access(i) for i in range(q.n))
assert all(q.rank(c, i) == nv.rank(c, i) for c in range(4) for i in range(q.n))
assert all(q.select(c, j) == nv.select(c, j) for c in range(4) for j in range(18))
print()
print("all queries agree with the naive scan")
