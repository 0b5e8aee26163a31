"""Exception hierarchy shared by every module of the package."""

U64_MAX = 2**64 - 1


class EraError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(EraError, ValueError):
    """An argument violates an operation's precondition."""


class RangeError(EraError, ValueError):
    """A query falls outside the range an indexer can answer."""


class ResultOutOfBound(RangeError):
    """The exact answer exists but exceeds the indexer's count bound.

    Ray extension treats this as the normal truncation signal.
    """


class NaturalOverflowError(EraError, OverflowError):
    """A value does not fit in an unsigned 64-bit integer."""


class ResourceError(EraError, MemoryError):
    """The requested bounds need more memory than can be allocated."""


class CacheFormatError(EraError):
    """A sieve cache file is malformed or does not match the request."""


def natural(value, name="value", minimum=1):
    """Validate ``value`` as an unsigned 64-bit integer ``>= minimum``."""
    try:
        value = int(value.__index__())
    except (AttributeError, TypeError):
        raise ParameterError(f"{name} must be an integer, got {value!r}") from None
    if value > U64_MAX:
        raise NaturalOverflowError(f"{name}={value} exceeds the 64-bit range")
    if value < minimum:
        raise ParameterError(f"{name} must be >= {minimum}, got {value}")
    return value
