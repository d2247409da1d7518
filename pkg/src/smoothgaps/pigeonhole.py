"""Constructive small gaps: smooth numbers in (sqrt X, X] binned dyadically.

``X`` is always given by its logarithm. Members are enumerated in log space and
materialized as exact integers, so every boundary and gap decision is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .arith import floor_exp, sieve_primes
from .bounds import BoundParams, eq22_bound_log
from .errors import CapacityError, ConstructionFailed, DomainError
from .smooth import (
    DEFAULT_ENUM_CAP,
    LogSmoothValue,
    SmoothnessBound,
    ennola_main_term_log,
    enumerate_smooth,
)

LOG_9 = math.log(9)
# largest y(sqrt X) for which pi(y) is tabulated in the fallback branch
MAX_FALLBACK_Y = 10**8


@dataclass
class PigeonholeResult:
    log_X: float
    y_sqrtX: float
    r: int
    regime: str
    members: int = 0
    bins: list[tuple[int, int]] = field(default_factory=list)
    chosen_h: int | None = None
    pair: tuple[int, int] | None = None
    gap_log: float | None = None
    eq22_rhs_log: float | None = None
    eq20_ratio: float | None = None
    fallback_margin_log: float | None = None

    @property
    def certified(self) -> bool:
        if self.regime == "constructive":
            return self.pair is not None and self.gap_log <= self.eq22_rhs_log
        return self.fallback_margin_log is not None and self.fallback_margin_log >= 0

    def as_dict(self) -> dict:
        return {
            "log_X": self.log_X,
            "y_sqrtX": self.y_sqrtX,
            "r": self.r,
            "regime": self.regime,
            "members": self.members,
            "bins": [list(b) for b in self.bins],
            "chosen_h": self.chosen_h,
            "pair": [str(v) for v in self.pair] if self.pair else None,
            "gap": str(self.pair[1] - self.pair[0]) if self.pair else None,
            "gap_log": self.gap_log,
            "eq22_rhs_log": self.eq22_rhs_log,
            "eq22_holds": self.certified if self.regime == "constructive" else None,
            "eq20_ratio": self.eq20_ratio,
            "fallback_margin_log": self.fallback_margin_log,
        }


def build_A(log_X: float, bound: SmoothnessBound, max_count: int = DEFAULT_ENUM_CAP) -> list[LogSmoothValue]:
    """Integers in ``(sqrt X, X]`` whose prime factors are ``<= y(sqrt X)``, ascending."""
    if log_X < LOG_9 - 1e-12:
        raise DomainError(f"need X >= 9, got log X = {log_X}")
    y = bound.at_log(log_X / 2)
    est = ennola_main_term_log(log_X, y)
    if est.log_value > math.log(max_count) + 1:
        raise CapacityError(f"about {est.value:.3g} members projected, cap is {max_count}")
    return enumerate_smooth(y, log_X / 2, log_X, max_count=max_count)


def bin_count(log_X: float) -> int:
    """The ``j`` with ``X / 2^j < sqrt X <= X / 2^(j-1)``."""
    x_floor = floor_exp(log_X)
    # sqrt X >= 2^(j-1)  <=>  floor(X) >= 4^(j-1)
    return (x_floor.bit_length() - 1) // 2 + 1


def _bin_index(n: int, x_floor: int) -> int:
    # n in (X/2^k, X/2^(k-1)]  <=>  2^(k-1) <= floor(X/n) < 2^k
    return (x_floor // n).bit_length()


def dyadic_bin(members: Sequence[LogSmoothValue | int], log_X: float) -> list[tuple[int, int]]:
    """Counts per interval ``(X/2^k, X/2^(k-1)]`` for ``k = 1..j``, zeros included."""
    x_floor = floor_exp(log_X)
    root_floor = floor_exp(log_X / 2)
    j = bin_count(log_X)
    counts = [0] * (j + 1)
    for v in members:
        n = int(v)
        if not root_floor < n <= x_floor:
            raise DomainError(f"member {n} outside (sqrt X, X]")
        counts[min(max(_bin_index(n, x_floor), 1), j)] += 1
    return [(k, counts[k]) for k in range(1, j + 1)]


def _pi(y: float) -> int:
    if y > MAX_FALLBACK_Y:
        raise CapacityError(f"y={y:g} too large to tabulate pi(y)")
    return sieve_primes(max(3, math.floor(y))).count_upto(y)


def _fallback_margin(log_X: float, bound: SmoothnessBound, params: BoundParams) -> float:
    """Smallest ``c1 y(n) - (pi(y(sqrt n)) - 1) log log n - log 2`` at both ends of the range.

    Non-negative means ``exp(c1 y)/(log n)^(r-1) >= 2``, which already exceeds
    every gap since ``n_{i+1} - n_i < 2 n_i``.
    """
    margins = []
    for log_n in (log_X / 2, log_X):
        y = bound.at_log(log_n)
        r = _pi(bound.at_log(log_n / 2))
        margins.append(params.c1 * y - (r - 1) * math.log(log_n) - math.log(2))
    return min(margins)


def find_small_gap(
    log_X: float,
    bound: SmoothnessBound,
    params: BoundParams = BoundParams(),
    max_count: int = DEFAULT_ENUM_CAP,
) -> PigeonholeResult:
    """Run the dyadic pigeonhole at ``X = exp(log_X)``.

    In the constructive regime ``y(sqrt X) <= (log X)^(1/4)``, the densest bin
    (ties go to the smallest ``k``) is searched for its minimal gap between
    neighbours, and that pair is checked against the pigeonhole gap bound.
    Otherwise no pair is built and the result carries the fallback margin.

    Raises:
        ConstructionFailed: if the densest bin holds fewer than two members.
    """
    if log_X < LOG_9 - 1e-12:
        raise DomainError(f"need X >= 9, got log X = {log_X}")
    y = bound.at_log(log_X / 2)
    r = _pi(y)
    if y > math.sqrt(math.sqrt(log_X)):
        return PigeonholeResult(
            log_X, y, r, "trivial", fallback_margin_log=_fallback_margin(log_X, bound, params)
        )

    members = build_A(log_X, bound, max_count)
    bins = dyadic_bin(members, log_X)
    h, best = min(bins, key=lambda kc: (-kc[1], kc[0]))
    result = PigeonholeResult(log_X, y, r, "constructive", len(members), bins, h)
    est = ennola_main_term_log(log_X, y)
    result.eq20_ratio = len(members) / (est.value / 2)
    if best < 2:
        raise ConstructionFailed(f"densest bin k={h} holds {best} member(s) at log X = {log_X}")

    x_floor = floor_exp(log_X)
    in_bin = [int(v) for v in members if _bin_index(int(v), x_floor) == h]
    gaps = ((b - a, a, b) for a, b in zip(in_bin, in_bin[1:]))
    gap, a, b = min(gaps)
    result.pair = (a, b)
    result.gap_log = math.log(gap)
    log_a = math.log(a)
    result.eq22_rhs_log = eq22_bound_log(
        a,
        r_prime=_pi(bound.at_log(log_a / 2)),
        s=_pi(bound.at_log(log_a)),
        y_i=bound.at_log(log_a),
    )
    return result
