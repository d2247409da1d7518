"""
Sequences of integers with a slowly growing prime-factor bound
==============================================================

Pick a non-decreasing bound y(x) >= 3 and keep every n with P(n) <= y(n).
For a constant bound these are the familiar y-smooth numbers; a bound that
grows like log n lets in more and more primes as n increases.
"""

import numpy as np

from smoothgaps import SmoothnessBound, enumerate_adaptive

bounds = {
    "const:3": SmoothnessBound.constant(3),
    "const:5": SmoothnessBound.constant(5),
    "logmul:1": SmoothnessBound.log_multiple(1),
    "slow:2": SmoothnessBound.slow_regime(2),
}

for name, bound in bounds.items():
    seq = enumerate_adaptive(bound, 10**6)
    print(f"{name:>9}: {len(seq):6d} terms <= 1e6, first few {list(seq)[:12]}")

# y(n) is clamped from below at 3, so const:2 is the same sequence as const:3
assert np.array_equal(
    enumerate_adaptive(SmoothnessBound.constant(2), 1000).terms,
    enumerate_adaptive(SmoothnessBound.constant(3), 1000).terms,
)

# Doubling closure: P(2n) = max(2, P(n)) <= y(n) <= y(2n) since y >= 3 never drops,
# so 2n stays in the sequence. Consecutive terms are therefore at most a factor 2 apart.
seq = enumerate_adaptive(bounds["logmul:1"], 10**6)
ratios = seq.terms[1:] / seq.terms[:-1]
print("largest ratio of consecutive terms:", ratios.max())
