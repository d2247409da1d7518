"""gcd reduction of consecutive pairs to coprime abc triples."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .arith import PrimeTable, chebyshev_theta, radical, sieve_primes
from .bounds import BoundParams
from .errors import DomainError
from .smooth import SmoothSequence

ABC_COLUMNS = ("n_i", "n_next", "g", "a", "b", "c", "radical", "quality")


@dataclass(frozen=True)
class AbcTriple:
    """``a + b = c_val`` with ``a = n_i/g``, ``b = t/g``, ``c_val = n_next/g``."""

    a: int
    b: int
    c_val: int
    g: int
    radical_G: int
    quality: float | None

    @property
    def n_i(self) -> int:
        return self.a * self.g

    @property
    def n_next(self) -> int:
        return self.c_val * self.g

    def as_row(self) -> tuple:
        return (self.n_i, self.n_next, self.g, self.a, self.b, self.c_val, self.radical_G, self.quality)


def reduce_pair(n_i: int, n_next: int) -> AbcTriple:
    if not 1 <= n_i < n_next:
        raise DomainError(f"need 1 <= n_i < n_next, got ({n_i}, {n_next})")
    g = math.gcd(n_i, n_next)
    a, c = n_i // g, n_next // g
    b = c - a
    # pairwise coprime, so the radicals multiply
    assert math.gcd(a, c) == 1 and math.gcd(a, b) == 1 and math.gcd(b, c) == 1
    G = radical(a) * radical(b) * radical(c)
    q = math.log(c) / math.log(G) if G >= 2 else None
    return AbcTriple(a, b, c, g, G, q)


@dataclass(frozen=True)
class Eq25Diagnostic:
    """Log-space comparison ``(n_i/c(eps))^(1/(1+eps)) < t * prod_{p <= y} p``.

    Conditional on abc with the configured ``c(eps)``; ``eq26_margin`` is
    ``c2 y - theta(y)``, positive when the primorial sits under ``exp(c2 y)``.
    """

    lhs_log: float
    rhs_log: float
    holds: bool
    eq26_margin: float


def check_eq25(
    triple: AbcTriple,
    t: int,
    y_next: float,
    params: BoundParams = BoundParams(),
    table: PrimeTable | None = None,
) -> Eq25Diagnostic:
    if y_next < 3:
        raise DomainError(f"need y_next >= 3, got {y_next}")
    if table is None:
        table = sieve_primes(max(3, math.floor(y_next)))
    theta = chebyshev_theta(table, y_next)
    lhs = (math.log(triple.n_i) - math.log(params.c_abc)) / (1 + params.epsilon)
    rhs = math.log(t) + theta
    return Eq25Diagnostic(lhs, rhs, lhs < rhs, params.c2 * y_next - theta)


def iter_triples(seq: SmoothSequence):
    terms = seq.terms
    for i in range(len(terms) - 1):
        yield reduce_pair(int(terms[i]), int(terms[i + 1]))


def scan_qualities(seq: SmoothSequence, top_k: int = 10) -> list[AbcTriple]:
    """Top ``top_k`` triples by quality, ties broken by smaller ``n_i``."""
    if len(seq) < 2:
        raise DomainError("sequence needs at least two terms")
    if top_k < 1:
        raise DomainError(f"top_k must be >= 1, got {top_k}")
    scored = (tr for tr in iter_triples(seq) if tr.quality is not None)
    return heapq.nsmallest(top_k, scored, key=lambda tr: (-tr.quality, tr.n_i))
