"""
Evaluating the gap bounds in log space
======================================

The lower bound n / (log n)^delta(c y) and the linear form
log(n_{i+1}/n_i) = sum l_j log p_j behind it. Constants are placeholders: the
flags say whether a chosen c is compatible with the data, nothing more.
"""

import math

from smoothgaps import (
    BoundParams,
    SmoothnessBound,
    check_gap_chain,
    consecutive_gaps,
    delta,
    enumerate_adaptive,
    factor_ratio,
    sieve_primes,
    thm1_lower_log,
    thm2_lower_log,
)

for x in (2, math.e, 3, 5, 10):
    print(f"delta({x:.4g}) = {delta(x):.6g}")

form = factor_ratio(80, 81, sieve_primes(5))
print("\n81/80 = prod p^l with l =", form.exponents, " Lambda =", form.value)

params = BoundParams(c=2 / 3)
table = sieve_primes(5)
recs = [r for r in consecutive_gaps(enumerate_adaptive(SmoothnessBound.constant(5), 10**6)) if r.n_i >= 1000]
flagged = 0
for r in recs:
    rep = check_gap_chain(r, table, 5, params)
    assert rep.chain_holds
    flagged += rep.c_too_small
print(f"\n{len(recs)} pairs with n >= 1000: chain t > n*Lambda > 0 holds for all; c too small for {flagged}")

n = 10**6
print("\nat n = 1e6, y = 3:")
print("  lower bound, unconditional: log RHS =", round(thm1_lower_log(n, 3, params), 3))
print("  lower bound under abc:      log RHS =", round(thm2_lower_log(n, 3, BoundParams(epsilon=0.1, c2=1)), 3))
