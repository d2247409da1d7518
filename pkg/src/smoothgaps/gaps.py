"""Consecutive gaps of a smooth sequence and the Tijdeman exponent kappa."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .arith import sieve_primes
from .errors import DomainError
from .smooth import SmoothnessBound, SmoothSequence, enumerate_adaptive

KAPPA_FLOOR = 16
HIST_BUCKETS = 64


@dataclass(frozen=True)
class GapRecord:
    i: int
    n_i: int
    n_next: int
    t: int
    p_of_n: int
    y_at_n: float
    r_at_sqrt: int
    kappa: float | None

    def as_row(self) -> tuple:
        return (self.i, self.n_i, self.n_next, self.t, self.p_of_n, self.y_at_n, self.r_at_sqrt, self.kappa)


GAP_COLUMNS = ("i", "n_i", "n_next", "t", "p_of_n", "y_at_n", "r_at_sqrt", "kappa")


def kappa(n: int, t: int) -> float:
    """The exponent ``c`` with ``t = n / (log n)^c``."""
    if n < KAPPA_FLOOR:
        raise DomainError(f"kappa needs n >= {KAPPA_FLOOR}, got {n}")
    if t < 1:
        raise DomainError(f"gap must be >= 1, got {t}")
    return (math.log(n) - math.log(t)) / math.log(math.log(n))


def iter_gaps(seq: SmoothSequence, kappa_floor: int = KAPPA_FLOOR) -> Iterator[GapRecord]:
    """Stream one ``GapRecord`` per consecutive pair, 1-based index ``i``."""
    if len(seq) < 2:
        raise DomainError("sequence needs at least two terms")
    bound = seq.bound
    terms = seq.terms
    y_cap = max(3.0, bound(int(terms[-1])))
    table = sieve_primes(max(3, math.floor(y_cap)))
    for i in range(len(terms) - 1):
        n, m = int(terms[i]), int(terms[i + 1])
        t = m - n
        log_n = math.log(n)
        r_sqrt = table.count_upto(bound.at_log(log_n / 2))
        k = kappa(n, t) if n >= kappa_floor else None
        yield GapRecord(i + 1, n, m, t, int(seq.gpf[i]), bound(n), r_sqrt, k)


def consecutive_gaps(seq: SmoothSequence, kappa_floor: int = KAPPA_FLOOR) -> list[GapRecord]:
    return list(iter_gaps(seq, kappa_floor))


@dataclass
class ScanReport:
    """Streaming statistics over gap records with ``n_i >= n_floor``.

    ``histogram[b]`` counts gaps with ``floor(log2 t) == b``. ``dyadic_hits[k]``
    counts pairs with ``2^k <= n_i < 2^(k+1)`` and ``t < n_i / log n_i``.
    """

    n_floor: int
    records: int = 0
    min_t: int | None = None
    argmin_pair: tuple[int, int] | None = None
    max_kappa: float | None = None
    argmax_kappa_pair: tuple[int, int] | None = None
    histogram: np.ndarray = field(default_factory=lambda: np.zeros(HIST_BUCKETS, dtype=np.int64))
    dyadic_hits: dict[int, int] = field(default_factory=dict)
    dyadic_pairs: dict[int, int] = field(default_factory=dict)

    def add(self, rec: GapRecord) -> None:
        self.records += 1
        pair = (rec.n_i, rec.n_next)
        if self.min_t is None or rec.t < self.min_t:
            self.min_t, self.argmin_pair = rec.t, pair
        if rec.kappa is not None and (self.max_kappa is None or rec.kappa > self.max_kappa):
            self.max_kappa, self.argmax_kappa_pair = rec.kappa, pair
        self.histogram[min(rec.t.bit_length() - 1, HIST_BUCKETS - 1)] += 1
        k = rec.n_i.bit_length() - 1
        self.dyadic_pairs[k] = self.dyadic_pairs.get(k, 0) + 1
        if rec.t * math.log(rec.n_i) < rec.n_i:
            self.dyadic_hits[k] = self.dyadic_hits.get(k, 0) + 1

    def merge(self, other: ScanReport) -> ScanReport:
        """Combine two reports; ``self`` must cover the lower range."""
        out = ScanReport(self.n_floor)
        out.records = self.records + other.records
        for rep in (self, other):
            if rep.min_t is not None and (out.min_t is None or rep.min_t < out.min_t):
                out.min_t, out.argmin_pair = rep.min_t, rep.argmin_pair
            if rep.max_kappa is not None and (out.max_kappa is None or rep.max_kappa > out.max_kappa):
                out.max_kappa, out.argmax_kappa_pair = rep.max_kappa, rep.argmax_kappa_pair
            for d_out, d_in in ((out.dyadic_hits, rep.dyadic_hits), (out.dyadic_pairs, rep.dyadic_pairs)):
                for k, v in d_in.items():
                    d_out[k] = d_out.get(k, 0) + v
        out.histogram = self.histogram + other.histogram
        return out

    def as_dict(self) -> dict:
        return {
            "n_floor": self.n_floor,
            "records": self.records,
            "min_t": self.min_t,
            "argmin_pair": list(self.argmin_pair) if self.argmin_pair else None,
            "max_kappa": self.max_kappa,
            "argmax_kappa_pair": list(self.argmax_kappa_pair) if self.argmax_kappa_pair else None,
            "histogram": {int(b): int(c) for b, c in enumerate(self.histogram) if c},
            "dyadic_hits": dict(sorted(self.dyadic_hits.items())),
            "dyadic_pairs": dict(sorted(self.dyadic_pairs.items())),
        }


def summarize(records: Iterable[GapRecord], n_floor: int) -> ScanReport:
    report = ScanReport(n_floor)
    for rec in records:
        if rec.n_i >= n_floor:
            report.add(rec)
    if report.records == 0:
        raise DomainError(f"no gap records with n_i >= {n_floor}")
    return report


def min_gap_scan(bound: SmoothnessBound, limit: int, n_floor: int = KAPPA_FLOOR, **scan_opts) -> ScanReport:
    """Minimal gap, maximal kappa and gap histogram for the sequence up to ``limit``."""
    if n_floor < KAPPA_FLOOR or limit <= n_floor:
        raise DomainError(f"need limit > n_floor >= {KAPPA_FLOOR}")
    seq = enumerate_adaptive(bound, limit, **scan_opts)
    return summarize(iter_gaps(seq), n_floor)
