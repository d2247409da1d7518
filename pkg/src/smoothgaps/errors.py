"""Exception hierarchy shared by every module."""


class SmoothGapsError(Exception):
    """Base class for all library errors."""


class DomainError(SmoothGapsError, ValueError):
    """An argument lies outside the domain of the operation."""


class OutOfRangeError(DomainError):
    """A query exceeds the range covered by a precomputed table."""


class NotSmoothError(DomainError):
    """An integer has a prime factor above the permitted smoothness bound."""


class CapacityError(SmoothGapsError):
    """A request would exceed a configured size or numeric-kind limit."""


class ConstructionFailed(SmoothGapsError):
    """The dyadic pigeonhole construction did not produce a pair."""
