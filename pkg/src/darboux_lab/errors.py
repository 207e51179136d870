"""Exception types raised across the package."""

from __future__ import annotations


class DarbouxLabError(Exception):
    """Base class for all library errors."""


class DegenerateIntervalError(DarbouxLabError, ValueError):
    pass


class DomainError(DarbouxLabError, ValueError):
    """A point or parameter lies outside the operation's domain."""


class KindMismatchError(DarbouxLabError, TypeError):
    """An operation defined only for step functions received a symbolic one."""


class OrderingError(DarbouxLabError, ValueError):
    pass


class UnsupportedKindError(DarbouxLabError, ValueError):
    pass


class ZeroFrequencyError(DarbouxLabError, ValueError):
    pass


class MonotonicityViolation(DarbouxLabError, RuntimeError):
    """Partial integrals of a nonnegative integrand provably decreased."""


class InvariantViolation(DarbouxLabError, RuntimeError):
    """An internal certificate could not be produced where one must exist."""
