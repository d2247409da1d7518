"""Arithmetic substrate: primes, greatest prime factors, radicals, theta, iterated logs.

Everything here is pure. ``PrimeTable`` and ``GpfSegment`` are frozen and their
arrays are marked read-only, so they can be shared freely between threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import CapacityError, DomainError, OutOfRangeError

DEFAULT_SEGMENT_CAPACITY = 1 << 24
INT64_MAX = (1 << 63) - 1

# primes below this are served from a cached sieve during trial division
_TRIAL_TABLE_LIMIT = 1 << 20


class NumericKind(enum.Enum):
    """Integer width used by a computation."""

    INT64 = "64"
    BIG = "big"

    @classmethod
    def parse(cls, text: str | NumericKind) -> NumericKind:
        if isinstance(text, cls):
            return text
        for kind in cls:
            if kind.value == str(text):
                return kind
        raise DomainError(f"unknown numeric kind {text!r} (expected '64' or 'big')")


def check_capacity(n: int, kind: NumericKind = NumericKind.INT64) -> None:
    """Raise ``CapacityError`` when ``n`` does not fit the numeric kind."""
    if kind is NumericKind.INT64 and n > INT64_MAX:
        raise CapacityError(f"{n} exceeds the 64-bit numeric kind; use numeric kind 'big'")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """All primes up to ``limit`` with exact counting and theta prefix sums."""

    limit: int
    primes: np.ndarray
    _theta_prefix: np.ndarray = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self) -> Iterator[int]:
        return (int(p) for p in self.primes)

    def count_upto(self, y: float) -> int:
        # primes are integers, so only floor(y) matters
        fy = math.floor(y)
        if fy > self.limit:
            raise OutOfRangeError(f"y={y} exceeds table limit {self.limit}")
        return int(np.searchsorted(self.primes, fy, side="right"))

    def upto(self, y: float) -> np.ndarray:
        """Primes ``p <= y`` as a read-only view."""
        return self.primes[: self.count_upto(y)]


def _neumaier_prefix(values: np.ndarray) -> np.ndarray:
    out = np.empty(len(values) + 1, dtype=np.float64)
    out[0] = 0.0
    s = 0.0
    comp = 0.0
    for i, v in enumerate(values.tolist()):
        t = s + v
        if abs(s) >= abs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
        out[i + 1] = s + comp
    return out


@lru_cache(maxsize=32)
def _eratosthenes(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if is_prime[i]:
            is_prime[i * i :: i] = False
    return _frozen(np.flatnonzero(is_prime).astype(np.int64))


@lru_cache(maxsize=16)
def sieve_primes(limit: int) -> PrimeTable:
    """Return the table of all primes ``<= limit``.

    Raises:
        DomainError: if ``limit < 2``.
    """
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    primes = _eratosthenes(limit)
    prefix = _neumaier_prefix(np.log(primes.astype(np.float64)))
    return PrimeTable(limit, primes, _frozen(prefix))


def prime_pi(table: PrimeTable, y: float) -> int:
    """Number of primes ``p <= y``; ``y`` may be any real up to ``table.limit``."""
    return table.count_upto(y)


def chebyshev_theta(table: PrimeTable, y: float) -> float:
    """Sum of ``log p`` over primes ``p <= y`` (compensated summation)."""
    return float(table._theta_prefix[table.count_upto(y)])


def _trial_primes() -> Iterator[int]:
    yield from (int(p) for p in _eratosthenes(_TRIAL_TABLE_LIMIT))
    # past the table: 6k +- 1 candidates, composites are harmless here
    k = (_TRIAL_TABLE_LIMIT // 6) + 1
    while True:
        yield 6 * k - 1
        yield 6 * k + 1
        k += 1


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division; ``{}`` for 0 and +-1."""
    n = abs(int(n))
    factors: dict[int, int] = {}
    if n <= 1:
        return factors
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def greatest_prime_factor(n: int) -> int:
    """P(n), with the convention P(0) = P(1) = P(-1) = 1."""
    f = factorize(n)
    return max(f) if f else 1


def radical(n: int) -> int:
    """Product of the distinct primes dividing ``n``; ``radical(1) == 1``."""
    if n < 1:
        raise DomainError(f"radical needs n >= 1, got {n}")
    return math.prod(factorize(n))


def gcd(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise DomainError("gcd arguments must be non-negative")
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def iterated_log(k: int, x: float) -> float:
    """k-fold application of ``t -> max(1, log t)``."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    t = float(x) if not isinstance(x, int) else x
    for _ in range(k):
        t = max(1.0, math.log(t))
    return float(t)


def iterated_log_from_log(k: int, log_x: float) -> float:
    """Same as ``iterated_log(k, exp(log_x))`` without forming ``exp(log_x)``."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    t = max(1.0, log_x)
    for _ in range(k - 1):
        t = max(1.0, math.log(t))
    return t


def floor_exp(log_x: float) -> int:
    """The integer threshold behind a log-space bound.

    Returns ``floor(exp(log_x))``, except that a value within relative 1e-12 of an
    integer ``m`` snaps to ``m``: ``log(100)`` stands for exactly 100, not 99.999...
    """
    if log_x < 0:
        return 0
    digits = int(log_x / math.log(10)) + 40
    with localcontext() as ctx:
        ctx.prec = digits
        v = Decimal(log_x).exp()
        m = int(v.to_integral_value())
        if abs(v - m) <= Decimal("1e-12") * max(m, 1):
            return m
        return int(v)


@dataclass(frozen=True, eq=False)
class GpfSegment:
    """Greatest prime factors of every integer in ``[lo, hi]``."""

    lo: int
    hi: int
    gpf: np.ndarray

    def __getitem__(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise OutOfRangeError(f"{n} outside segment [{self.lo}, {self.hi}]")
        return int(self.gpf[n - self.lo])


def gpf_range(lo: int, hi: int, max_size: int = DEFAULT_SEGMENT_CAPACITY) -> GpfSegment:
    """Segmented sieve for P(n) on ``[lo, hi]``.

    Each prime up to ``isqrt(hi)`` is divided out of its multiples in increasing
    order, so the last prime to mark an entry is its largest small factor; any
    cofactor left above 1 is a single prime larger than all of them.
    """
    lo, hi = int(lo), int(hi)
    if lo < 1 or hi < lo:
        raise DomainError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    size = hi - lo + 1
    if size > max_size:
        raise CapacityError(f"segment of {size} entries exceeds capacity {max_size}")
    check_capacity(hi)

    rem = np.arange(lo, hi + 1, dtype=np.int64)
    gpf = np.ones(size, dtype=np.int64)
    root = math.isqrt(hi)
    if root >= 2:
        for p in _eratosthenes(root).tolist():
            start = (-lo) % p
            if start >= size:
                continue
            gpf[start::p] = p
            sub = rem[start::p]
            mask = np.ones(len(sub), dtype=bool)
            while True:
                sub[mask] //= p
                mask = sub % p == 0
                if not mask.any():
                    break
    np.copyto(gpf, rem, where=rem > 1)
    return GpfSegment(lo, hi, _frozen(gpf))
