"""Log-space evaluation of the gap bounds and the linear-form pipeline.

All ``*_log`` functions return natural logarithms of the bound's right-hand
side, because the linear values overflow doubles long before the interesting
range. Constants live in :class:`BoundParams`; the defaults are illustrative
stand-ins, not effective constants.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .arith import PrimeTable, factorize, iterated_log
from .errors import DomainError, NotSmoothError

CONSTANTS_NOTE = "illustrative, not effective"


@dataclass(frozen=True)
class BoundParams:
    """Tunable constants for the bound formulas.

    Attributes:
        c: exponent scale in the lower bound ``n / (log n)^delta(c y)``.
        c1: scale of ``exp(c1 y)`` in the upper bound.
        c1_eps: leading constant of the conditional (abc) lower bound.
        c2: scale of ``exp(c2 y)`` in the conditional lower bound.
        c0: base of ``c0^n`` in the linear-forms lower bound.
        epsilon: abc exponent slack, in (0, 1).
        c_abc: the abc constant ``c(epsilon)``.
    """

    c: float = 2.0
    c1: float = 2.0
    c1_eps: float = 1.0
    c2: float = 2.0
    c0: float = 2.0
    epsilon: float = 0.5
    c_abc: float = 1.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise DomainError(f"{name} must be positive, got {value}")
        if not self.epsilon < 1:
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon}")

    def describe(self) -> dict:
        return {**asdict(self), "note": CONSTANTS_NOTE}


def _exp_or_inf(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def _loglog(n: int) -> float:
    return math.log(math.log(n))


def delta_log(x: float) -> float:
    """``log delta(x) = x log2(x) / log x`` for ``x >= 2``."""
    if x < 2:
        raise DomainError(f"delta needs x >= 2, got {x}")
    return x * iterated_log(2, x) / math.log(x)


def delta(x: float) -> float:
    """``delta(x) = exp(x log2(x) / log x)``; ``inf`` once past double range."""
    return _exp_or_inf(delta_log(x))


def thm1_lower_log(n_i: int, y_next: float, params: BoundParams = BoundParams()) -> float:
    """``log(n_i / (log n_i)^delta(c y_next))``."""
    if n_i < 3 or y_next < 3:
        raise DomainError("need n_i >= 3 and y_next >= 3")
    cy = params.c * y_next
    if cy < 2:
        raise DomainError(f"c*y_next must be >= 2, got {cy}")
    return math.log(n_i) - delta(cy) * _loglog(n_i)


def thm1_upper_log(n_i: int, y_i: float, r: int, params: BoundParams = BoundParams()) -> float:
    """``log(n_i exp(c1 y_i) / (log n_i)^(r-1))`` with ``r = pi(y(sqrt n_i))``."""
    if n_i < 3:
        raise DomainError(f"need n_i >= 3, got {n_i}")
    if r < 1:
        raise DomainError(f"need r >= 1, got {r}")
    return math.log(n_i) + params.c1 * y_i - (r - 1) * _loglog(n_i)


def eq22_bound_log(n_i: int, r_prime: int, s: int, y_i: float) -> float:
    """Log of the pigeonhole gap bound ``3 n_i (s log y_i)^s / (log n_i)^(r'-1)``."""
    if n_i < 3 or r_prime < 1 or s < 1 or y_i < 3:
        raise DomainError("need n_i >= 3, r_prime >= 1, s >= 1, y_i >= 3")
    return (
        math.log(3)
        + math.log(n_i)
        - (r_prime - 1) * _loglog(n_i)
        + s * (math.log(s) + math.log(math.log(y_i)))
    )


def thm2_lower_log(n_i: int, y_next: float, params: BoundParams = BoundParams()) -> float:
    """``log(c1_eps n_i^(1-eps) / exp(c2 y_next))``."""
    if n_i < 1:
        raise DomainError(f"need n_i >= 1, got {n_i}")
    return math.log(params.c1_eps) + (1 - params.epsilon) * math.log(n_i) - params.c2 * y_next


def height(alpha: Fraction | int) -> int:
    """``H(a/b) = max(|a|, |b|)`` in lowest terms."""
    alpha = Fraction(alpha)
    if alpha == 0:
        raise DomainError("height is defined for non-zero rationals")
    return max(abs(alpha.numerator), alpha.denominator)


@dataclass(frozen=True)
class LinearForm:
    """``sum l_j log p_j`` over a prime basis."""

    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    B: int
    value: float

    @property
    def support(self) -> list[tuple[int, int]]:
        """``(p_j, l_j)`` pairs with non-zero exponent."""
        return [(p, l) for p, l in zip(self.primes, self.exponents) if l]


# below this ratio |Lambda| / sum |l_j log p_j| the double result is recomputed
_CANCELLATION = 1e-13


def factor_ratio(n: int, m: int, table: PrimeTable, y: float | None = None) -> LinearForm:
    """Write ``m / n`` as ``prod p_j^l_j`` over the primes ``<= y`` in ``table``.

    Raises:
        NotSmoothError: if ``n`` or ``m`` has a prime factor above ``y``.
    """
    if n < 1 or m < 1:
        raise DomainError("need n, m >= 1")
    y = table.limit if y is None else y
    basis = tuple(int(p) for p in table.upto(y))
    fn, fm = factorize(n), factorize(m)
    stray = [p for p in (*fn, *fm) if p > y]
    if stray:
        raise NotSmoothError(f"prime factor {max(stray)} exceeds y={y}")
    exps = tuple(fm.get(p, 0) - fn.get(p, 0) for p in basis)
    terms = [l * math.log(p) for p, l in zip(basis, exps) if l]
    value = math.fsum(terms)
    scale = math.fsum(abs(v) for v in terms)
    if terms and abs(value) < _CANCELLATION * scale:
        with localcontext() as ctx:
            ctx.prec = 40
            value = float((Decimal(m) / Decimal(n)).ln())
    return LinearForm(basis, exps, max((abs(l) for l in exps), default=0), value)


def matveev_rhs(form_size: int, heights: Sequence[float], B: int, params: BoundParams = BoundParams()) -> float:
    """``-c0^n log A_1 ... log A_n log B``, a lower bound for ``log |Lambda|``."""
    if form_size < 1 or form_size != len(heights):
        raise DomainError("form_size must equal len(heights) and be >= 1")
    if any(a < 3 for a in heights):
        raise DomainError("every height bound must be >= 3")
    if B < 3:
        raise DomainError(f"B must be >= 3, got {B}")
    return -(params.c0**form_size) * math.prod(math.log(a) for a in heights) * math.log(B)


@dataclass(frozen=True)
class GapChainReport:
    n_i: int
    n_next: int
    t: int
    form: LinearForm
    log_ratio: float
    minorant: float
    log_abs_lambda: float
    matveev_log: float
    thm1_lower_log: float
    chain_holds: bool
    lambda_matches: bool
    matveev_consistent: bool
    c_too_small: bool


def check_gap_chain(record, table: PrimeTable, y_next: float, params: BoundParams = BoundParams()) -> GapChainReport:
    """Check ``t > n_i log(n_next/n_i) > 0`` and compare ``log|Lambda|`` with the
    linear-forms bound.

    The bound is applied to the non-zero exponents only, with height bounds
    ``max(3, p_j)`` and ``max(3, B)`` so its hypotheses hold. ``c_too_small``
    flags a configured ``c`` for which the lower bound exceeds the observed gap;
    that says ``c`` must be larger, never that the bound is false.
    """
    n, m, t = record.n_i, record.n_next, record.t
    form = factor_ratio(n, m, table, y_next)
    log_ratio = math.log(m) - math.log(n)
    minorant = n * form.value
    support = form.support
    heights = [max(3, p) for p, _ in support]
    matveev = matveev_rhs(len(heights), heights, max(3, form.B), params)
    log_abs = math.log(abs(form.value))
    lower = thm1_lower_log(n, y_next, params) if n >= 3 else -math.inf
    return GapChainReport(
        n_i=n,
        n_next=m,
        t=t,
        form=form,
        log_ratio=log_ratio,
        minorant=minorant,
        log_abs_lambda=log_abs,
        matveev_log=matveev,
        thm1_lower_log=lower,
        chain_holds=t > minorant > 0,
        lambda_matches=abs(form.value - log_ratio) <= 1e-9 * abs(log_ratio),
        matveev_consistent=log_abs > matveev,
        c_too_small=lower > math.log(t),
    )
