"""Smoothness bounds, Psi(x, y) counting and enumeration of smooth numbers."""

from __future__ import annotations

import math
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .arith import (
    DEFAULT_SEGMENT_CAPACITY,
    NumericKind,
    PrimeTable,
    check_capacity,
    floor_exp,
    gpf_range,
    greatest_prime_factor,
    sieve_primes,
)
from .errors import CapacityError, DomainError

MIN_Y = 3.0
DEFAULT_ENUM_CAP = 5_000_000
DEFAULT_SCAN_SEGMENT = 1 << 18

_KINDS = ("const", "logmul", "slow", "powlog", "step")


def _clamp_log(log_x):
    return np.maximum(1.0, log_x)


@dataclass(frozen=True)
class SmoothnessBound:
    """A non-decreasing bound ``y(x) >= 3`` selecting the sequence ``P(n) <= y(n)``.

    Build one with the named constructors or :meth:`parse`. Evaluation clamps
    the result to at least 3.
    """

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown bound kind {self.kind!r}")
        if self.kind == "step":
            thresholds = [t for t, _ in self.params]
            values = [v for _, v in self.params]
            if not self.params:
                raise DomainError("step table needs at least one entry")
            if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
                raise DomainError("step thresholds must be strictly ascending")
            if any(b < a for a, b in zip(values, values[1:])):
                raise DomainError("step values must be non-decreasing")
        elif self.kind == "const":
            (y0,) = self.params
            if not math.isfinite(y0):
                raise DomainError("constant bound must be finite")
        elif self.kind == "powlog":
            a, beta = self.params
            if a <= 0 or beta < 0:
                raise DomainError("powlog needs a > 0 and beta >= 0")
        else:
            (a,) = self.params
            if a <= 0:
                raise DomainError(f"{self.kind} needs a > 0")

    @classmethod
    def constant(cls, y0: float) -> SmoothnessBound:
        return cls("const", (float(y0),))

    @classmethod
    def log_multiple(cls, a: float) -> SmoothnessBound:
        """``max(3, a log x)``: the o(log n) growth regime."""
        return cls("logmul", (float(a),))

    @classmethod
    def slow_regime(cls, a: float) -> SmoothnessBound:
        """``max(3, a log2 x log3 x / log4 x)`` with iterated logs."""
        return cls("slow", (float(a),))

    @classmethod
    def power_log(cls, a: float, beta: float) -> SmoothnessBound:
        return cls("powlog", (float(a), float(beta)))

    @classmethod
    def step_table(cls, entries: Sequence[tuple[float, float]]) -> SmoothnessBound:
        """Piecewise constant: the value of the last entry whose threshold is <= x."""
        return cls("step", tuple((float(t), float(v)) for t, v in entries))

    @classmethod
    def parse(cls, text: str) -> SmoothnessBound:
        """Parse ``const:Y``, ``logmul:A``, ``slow:A``, ``powlog:A,B`` or ``step:FILE``."""
        kind, _, arg = text.partition(":")
        if not arg:
            raise DomainError(f"bound {text!r} missing ':' argument")
        try:
            if kind == "const":
                return cls.constant(float(arg))
            if kind == "logmul":
                return cls.log_multiple(float(arg))
            if kind == "slow":
                return cls.slow_regime(float(arg))
            if kind == "powlog":
                a, beta = arg.split(",")
                return cls.power_log(float(a), float(beta))
            if kind == "step":
                return cls.step_table(read_step_file(arg))
        except (ValueError, OSError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"bad bound {text!r}: {exc}") from exc
        raise DomainError(f"unknown bound kind in {text!r}")

    def to_dict(self) -> dict:
        if self.kind == "step":
            return {"kind": "step", "entries": [list(e) for e in self.params]}
        return {"kind": self.kind, "params": list(self.params)}

    @classmethod
    def from_dict(cls, d: dict) -> SmoothnessBound:
        if d["kind"] == "step":
            return cls.step_table([tuple(e) for e in d["entries"]])
        return cls(d["kind"], tuple(float(p) for p in d["params"]))

    def _raw_from_log(self, log_x):
        kind, p = self.kind, self.params
        if kind == "const":
            return np.full_like(log_x, p[0], dtype=np.float64)
        if kind == "logmul":
            return p[0] * log_x
        if kind == "powlog":
            return p[0] * np.maximum(log_x, 0.0) ** p[1]
        if kind == "slow":
            l2 = _clamp_log(np.log(_clamp_log(log_x)))
            l3 = _clamp_log(np.log(l2))
            l4 = _clamp_log(np.log(l3))
            return p[0] * l2 * l3 / l4
        thr_log = np.array([math.log(t) if t > 0 else -math.inf for t, _ in p])
        values = np.array([MIN_Y] + [v for _, v in p])
        return values[np.searchsorted(thr_log, log_x, side="right")]

    def at_log(self, log_x: float) -> float:
        """``y(exp(log_x))``, usable when ``x`` is far beyond double range."""
        return float(np.maximum(MIN_Y, self._raw_from_log(np.asarray(log_x, dtype=np.float64))))

    def evaluate(self, x) -> np.ndarray:
        """Vectorized ``y(x)`` for an array of positive reals or integers."""
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "step":
            thresholds = np.array([t for t, _ in self.params])
            raw = np.array([MIN_Y] + [v for _, v in self.params])[
                np.searchsorted(thresholds, x, side="right")
            ]
        else:
            raw = self._raw_from_log(np.log(x))
        return np.maximum(MIN_Y, raw)

    def __call__(self, x) -> float:
        if self.kind == "step":
            idx = bisect_right([t for t, _ in self.params], x)
            return max(MIN_Y, self.params[idx - 1][1]) if idx else MIN_Y
        return self.at_log(math.log(x))

    def __str__(self) -> str:
        if self.kind == "step":
            return "step:" + ";".join(f"{t:g},{v:g}" for t, v in self.params)
        return f"{self.kind}:" + ",".join(f"{p:g}" for p in self.params)


def read_step_file(path: str | Path) -> list[tuple[float, float]]:
    """Read a step table from a ``threshold,value`` CSV (header line optional)."""
    entries = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        t, v = line.split(",")[:2]
        try:
            entries.append((float(t), float(v)))
        except ValueError:
            if entries:
                raise
    return entries


def is_smooth(n: int, y: float) -> bool:
    """True iff P(n) <= y."""
    if n < 1:
        raise DomainError(f"is_smooth needs n >= 1, got {n}")
    return greatest_prime_factor(n) <= y


def _primes_upto(y: float) -> list[int]:
    if y < 2:
        return []
    return [int(p) for p in sieve_primes(max(2, math.floor(y))).upto(y)]


def psi_exact(x: int, y: float) -> int:
    """Exact count of ``n <= x`` with every prime factor ``<= y``.

    Counts lattice points recursively from the largest prime down, so the cost
    is proportional to the number of smooth integers rather than to ``x``.
    """
    if y < 2:
        raise DomainError(f"psi_exact needs y >= 2, got {y}")
    x = int(x)
    if x < 1:
        return 0
    return _psi_count(x, tuple(_primes_upto(y)))


def _psi_count(x: int, primes: tuple[int, ...]) -> int:
    memo: dict[tuple[int, int], int] = {}

    def count(x: int, i: int) -> int:
        # i indexes the largest usable prime; primes above x contribute nothing
        if primes[i] > x:
            i = bisect_right(primes, x, 0, i) - 1
            if i < 0:
                return 1
        if i == 0:
            return x.bit_length()
        key = (x, i)
        if key in memo:
            return memo[key]
        p = primes[i]
        total = 0
        while x >= 1:
            total += count(x, i - 1)
            x //= p
        memo[key] = total
        return total

    return count(x, len(primes) - 1)


def psi_exact_log(log_x: float, y: float) -> int:
    """``psi_exact(floor(exp(log_x)), y)`` for log-space ``x``."""
    return psi_exact(floor_exp(log_x), y)


class EnnolaEstimate(NamedTuple):
    value: float
    log_value: float
    in_regime: bool


def ennola_main_term_log(log_x: float, y: float, table: PrimeTable | None = None) -> EnnolaEstimate:
    """Main term ``(log x)^r / prod_{i<=r} (i log p_i)`` with ``r = pi(y)``.

    ``in_regime`` reports ``2 <= y <= (log x)^(1/2)``; outside it the value is
    still returned.
    """
    if table is None:
        table = sieve_primes(max(2, math.floor(y)))
    primes = table.upto(y)
    r = len(primes)
    if r < 1:
        raise DomainError(f"need pi(y) >= 1, got y={y}")
    if log_x <= 0:
        raise DomainError("need x > 1")
    log_den = math.fsum(math.log(i * math.log(int(p))) for i, p in enumerate(primes, 1))
    log_value = r * math.log(log_x) - log_den
    value = math.exp(log_value) if log_value < 700 else math.inf
    return EnnolaEstimate(value, log_value, 2 <= y and y * y <= log_x)


def psi_ennola_main(x: float, y: float, table: PrimeTable | None = None) -> EnnolaEstimate:
    if x < 3:
        raise DomainError(f"psi_ennola_main needs x >= 3, got {x}")
    return ennola_main_term_log(math.log(x), y, table)


@dataclass(frozen=True)
class LogSmoothValue:
    """``prod p_j ** e_j`` kept as an exponent vector plus its logarithm."""

    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    log_value: float

    @cached_property
    def exact_value(self) -> int:
        return math.prod(p**e for p, e in zip(self.primes, self.exponents))

    def __int__(self) -> int:
        return self.exact_value


def _order_near_ties(values: list[LogSmoothValue], rel: float = 1e-9) -> None:
    """Reorder runs of nearly equal log values by exact integer value, in place."""
    i = 0
    n = len(values)
    while i < n:
        j = i + 1
        while j < n and values[j].log_value - values[j - 1].log_value <= rel * max(1.0, values[j].log_value):
            j += 1
        if j - i > 1:
            values[i:j] = sorted(values[i:j], key=lambda v: v.exact_value)
        i = j


def enumerate_smooth(
    y: float,
    log_lo: float,
    log_hi: float,
    max_count: int = DEFAULT_ENUM_CAP,
) -> list[LogSmoothValue]:
    """All y-smooth ``n`` with ``exp(log_lo) < n <= exp(log_hi)``, ascending.

    Exponent vectors are generated depth first under the ``log_hi`` budget.
    Candidates within 1e-9 of either boundary are settled by comparing the exact
    integer with :func:`floor_exp` of that boundary.

    Raises:
        CapacityError: if more than ``max_count`` values qualify.
    """
    if log_lo < 0 or log_hi <= log_lo:
        raise DomainError(f"need 0 <= log_lo < log_hi, got ({log_lo}, {log_hi})")
    primes = tuple(_primes_upto(y))
    if not primes:
        raise DomainError(f"no primes <= {y}")
    logs = [math.log(p) for p in primes]
    r = len(primes)
    tol = 1e-9 * max(1.0, log_hi)
    hi_int = lo_int = None
    out: list[LogSmoothValue] = []
    exps = [0] * r

    def admit(lv: float) -> None:
        nonlocal hi_int, lo_int
        if lv > log_hi - tol or lv <= log_lo + tol:
            v = math.prod(p**e for p, e in zip(primes, exps))
            if hi_int is None:
                hi_int, lo_int = floor_exp(log_hi), floor_exp(log_lo)
            if not lo_int < v <= hi_int:
                return
        if len(out) >= max_count:
            raise CapacityError(f"more than {max_count} smooth values in range")
        out.append(LogSmoothValue(primes, tuple(exps), math.fsum(e * g for e, g in zip(exps, logs))))

    def walk(i: int, lv: float) -> None:
        if i == r:
            if lv > log_lo - tol:
                admit(lv)
            return
        g = logs[i]
        e = 0
        while lv <= log_hi + tol:
            exps[i] = e
            walk(i + 1, lv)
            e += 1
            lv += g
        exps[i] = 0

    walk(0, 0.0)
    out.sort(key=lambda v: (v.log_value, v.exponents))
    _order_near_ties(out)
    return out


@dataclass(frozen=True, eq=False)
class SmoothSequence:
    """Terms ``n <= limit`` with ``P(n) <= bound(n)``, plus their P(n)."""

    bound: SmoothnessBound
    limit: int
    terms: np.ndarray
    gpf: np.ndarray
    numeric: NumericKind = NumericKind.INT64
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[int]:
        return (int(n) for n in self.terms)

    def __contains__(self, n: int) -> bool:
        i = int(np.searchsorted(self.terms, n))
        return i < len(self.terms) and int(self.terms[i]) == n


def _scan_segment(bound: SmoothnessBound, lo: int, hi: int, capacity: int):
    seg = gpf_range(lo, hi, max_size=capacity)
    gpf = seg.gpf
    y_lo, y_hi = bound(lo), bound(hi)
    keep = gpf <= y_lo
    # only entries with y(lo) < P(n) <= y(hi) need y(n) itself
    undecided = np.flatnonzero((gpf > y_lo) & (gpf <= y_hi))
    if len(undecided):
        ys = bound.evaluate(undecided + lo)
        keep[undecided[gpf[undecided] <= ys]] = True
    idx = np.flatnonzero(keep)
    return idx + lo, gpf[idx]


def enumerate_adaptive(
    bound: SmoothnessBound,
    limit: int,
    *,
    segment: int = DEFAULT_SCAN_SEGMENT,
    threads: int = 1,
    numeric: NumericKind | str = NumericKind.INT64,
    capacity: int | None = None,
) -> SmoothSequence:
    """Every ``n <= limit`` with ``P(n) <= bound(n)``, via a segmented GPF sieve.

    With ``numeric='big'`` the scan falls back to pointwise factorization in
    Python integers, which lifts the 64-bit ceiling at a large cost in speed.
    """
    numeric = NumericKind.parse(numeric)
    limit = int(limit)
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    check_capacity(limit, numeric)
    if numeric is NumericKind.BIG and limit > (1 << 62):
        terms, gpfs = [], []
        for n in range(1, limit + 1):
            p = greatest_prime_factor(n)
            if p <= bound(n):
                terms.append(n)
                gpfs.append(p)
        return SmoothSequence(
            bound, limit, np.array(terms, dtype=object), np.array(gpfs, dtype=object), numeric
        )

    capacity = capacity or DEFAULT_SEGMENT_CAPACITY
    if segment > capacity:
        raise CapacityError(f"segment size {segment} exceeds capacity {capacity}")
    ranges = [(lo, min(lo + segment - 1, limit)) for lo in range(1, limit + 1, segment)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: _scan_segment(bound, r[0], r[1], capacity), ranges))
    else:
        parts = [_scan_segment(bound, lo, hi, capacity) for lo, hi in ranges]
    terms = np.concatenate([p[0] for p in parts])
    gpfs = np.concatenate([p[1] for p in parts])
    terms.setflags(write=False)
    gpfs.setflags(write=False)
    return SmoothSequence(bound, limit, terms, gpfs, numeric, {"segment": segment, "threads": threads})
