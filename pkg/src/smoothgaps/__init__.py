"""Gaps between consecutive integers whose greatest prime factor is small.

Submodules: ``arith`` (primes, P(n), radicals, theta), ``smooth`` (bounds, Psi,
enumeration), ``gaps``, ``bounds``, ``pigeonhole``, ``abc`` and ``cli``.
"""

from .abc import AbcTriple, check_eq25, reduce_pair, scan_qualities
from .arith import (
    GpfSegment,
    NumericKind,
    PrimeTable,
    chebyshev_theta,
    gcd,
    gpf_range,
    greatest_prime_factor,
    iterated_log,
    prime_pi,
    radical,
    sieve_primes,
)
from .bounds import (
    BoundParams,
    LinearForm,
    check_gap_chain,
    delta,
    delta_log,
    eq22_bound_log,
    factor_ratio,
    height,
    matveev_rhs,
    thm1_lower_log,
    thm1_upper_log,
    thm2_lower_log,
)
from .errors import (
    CapacityError,
    ConstructionFailed,
    DomainError,
    NotSmoothError,
    OutOfRangeError,
    SmoothGapsError,
)
from .gaps import GapRecord, ScanReport, consecutive_gaps, kappa, min_gap_scan
from .pigeonhole import PigeonholeResult, build_A, dyadic_bin, find_small_gap
from .smooth import (
    LogSmoothValue,
    SmoothnessBound,
    SmoothSequence,
    enumerate_adaptive,
    enumerate_smooth,
    is_smooth,
    psi_ennola_main,
    psi_exact,
)

__version__ = "0.1.0"
