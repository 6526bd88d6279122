"""
How small can |a^2 - 2 b^2| get?
================================

Scan the box 1 <= a, b <= N and record the smallest value of
|a^2 - 2 b^2| together with every pair that attains it.
"""

import time

from surdforge import empirical_min_search

##############################################################################
# The full quadratic scan is kept as a reference; it is fine for N = 1000.

t0 = time.perf_counter()
naive = empirical_min_search(2, 1000, method="naive")
print(f"naive scan    : minimum {naive.minimum}  ({time.perf_counter() - t0:.2f} s)")

##############################################################################
# For a fixed b only the two integers around sqrt(2) b can minimise the
# expression, so one pass over b is enough.

t0 = time.perf_counter()
fast = empirical_min_search(2, 1000)
print(f"per-b scan    : minimum {fast.minimum}  ({time.perf_counter() - t0:.4f} s)")
assert fast == naive

print("pairs attaining it:", ", ".join(map(str, fast.witnesses)))

##############################################################################
# The same scan scales to a box of side 10^8.

t0 = time.perf_counter()
big = empirical_min_search(2, 10**8)
print(f"N = 10^8      : minimum {big.minimum}, {len(big.witnesses)} pairs  ({time.perf_counter() - t0:.1f} s)")

##############################################################################
# Other non-square n behave the same way.  For n = 3 every witness has
# a^2 - 3 b^2 = +1; the value -1 never occurs.

for n in (3, 5, 6, 7):
    r = empirical_min_search(n, 1000)
    print(f"n = {n}: minimum {r.minimum}, witnesses {', '.join(map(str, r.witnesses))}")
