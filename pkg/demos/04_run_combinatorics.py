#!/usr/bin/env python3
"""Count strings by their number of runs: closed formula vs. brute force.

A length-n string over sigma letters with exactly r maximal runs is fixed
by choosing the r-1 run boundaries among n-1 gaps, the first head freely,
and every later head different from its predecessor:

    C(n-1, r-1) * sigma * (sigma-1)^(r-1)

The exhaustive counter generates all sigma^n strings, so the check stays
at toy sizes; summing over r must hit sigma^n exactly.
"""

from rlrs import count_strings_with_runs, enumerate_strings_with_runs

for sigma in (2, 3):
    print(f"sigma = {sigma}")
    for n in range(1, 9):
        counts = []
        for r in range(1, n + 1):
            formula = count_strings_with_runs(n, sigma, r)
            brute = enumerate_strings_with_runs(n, sigma, r)
            assert formula == brute, (n, sigma, r, formula, brute)
            counts.append(formula)
        total = sum(counts)
        assert total == sigma**n
        print(f"  n={n}: counts by run number {counts}  sum = {total} = {sigma}^{n}")
    print()

print("formula and enumeration agree everywhere, and totals match sigma^n")
