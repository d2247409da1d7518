"""
Gaps between consecutive terms and the Tijdeman exponent
========================================================

For a gap t after n we solve t = n / (log n)^kappa. Small gaps mean large
kappa; for 5-smooth numbers the record below 10^6 is the pair (80, 81).
"""

import math

from smoothgaps import SmoothnessBound, min_gap_scan

rep = min_gap_scan(SmoothnessBound.constant(5), 10**6, n_floor=16)
print("pairs scanned:", rep.records)
print("minimal gap:", rep.min_t, "at", rep.argmin_pair)
print("max kappa: %.4f at %s" % (rep.max_kappa, rep.argmax_kappa_pair))

print("\npairs with t < n/log n, by dyadic range of n:")
for k, hits in sorted(rep.dyadic_hits.items()):
    total = rep.dyadic_pairs[k]
    print(f"  [2^{k:<2d}, 2^{k + 1:<2d})  {hits:3d} of {total:3d}")

print("\ngap histogram over floor(log2 t):")
for b, c in enumerate(rep.histogram):
    if c:
        print(f"  {2**b:>7d} <= t < {2**(b + 1):<7d} {'#' * math.ceil(c / 2)}")
