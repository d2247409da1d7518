"""
A certified small gap near e^200, and abc qualities of consecutive pairs
========================================================================

Collect the 3-smooth numbers in (sqrt X, X], split that range into dyadic
intervals, and take the closest neighbours in the fullest one. The pair is
exact and its gap is compared with 3 n (s log y)^s / (log n)^(r'-1).
"""

from smoothgaps import SmoothnessBound, enumerate_adaptive, find_small_gap, reduce_pair, scan_qualities

for log_x in (81, 100, 150, 200):
    res = find_small_gap(log_x, SmoothnessBound.constant(3))
    a, b = res.pair
    print(f"log X = {log_x}: {res.members} members in {len(res.bins)} bins, densest k={res.chosen_h}")
    print(f"  log gap = {res.gap_log:.3f} <= bound {res.eq22_rhs_log:.3f}: {res.certified}")
    print(f"  n_i = {a}")

res = find_small_gap(100, SmoothnessBound.constant(7))
print("\ny = 7 exceeds (log X)^(1/4) at log X = 100, so no pair is built:", res.regime, "margin", round(res.fallback_margin_log, 3))

print("\n(8, 9):", reduce_pair(8, 9))
# Scaling a pair by any 5-smooth g keeps both numbers in the sequence, so each
# reduced triple shows up many times. List the distinct ones.
print("\ntop abc qualities among consecutive 5-smooth numbers below 1e6:")
seen = {}
for tr in scan_qualities(enumerate_adaptive(SmoothnessBound.constant(5), 10**6), 60):
    seen.setdefault((tr.a, tr.b, tr.c_val), []).append(tr.g)
for (a, b, c), gs in list(seen.items())[:6]:
    q = reduce_pair(a, c).quality
    print(f"  {a} + {b} = {c}  q = {q:.4f}  seen at g = {gs[:6]}{' ...' if len(gs) > 6 else ''}")
