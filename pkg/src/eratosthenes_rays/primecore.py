"""Primality, prime counting and nth-prime lookup up to a configured bound.

A :class:`PrimeIndexer` keeps a dense odd-only sieve up to ``sieve_bound`` and
answers ``pi(x)`` for ``x <= count_bound`` with the Lucy_Hedgehog recurrence,
which needs only O(sqrt(x)) memory. The nth prime is found by bracketing
``p_n`` between explicit bounds, counting once at an estimate inside the
bracket, and walking to the exact answer with a segmented sieve.

Bit ``i`` of the dense sieve stands for the odd integer ``2*i + 3``.
"""

from __future__ import annotations

import math
import os
from math import isqrt

import numpy as np
from scipy.special import expi

from .errors import (
    ParameterError,
    RangeError,
    ResourceError,
    ResultOutOfBound,
    natural,
)

DEFAULT_SIEVE_BOUND = 10**8
DEFAULT_COUNT_BOUND = 10**11

# odd slots per prefix-count block
_BLOCK = 4096
# odd slots per segment when walking beyond the dense sieve
_SEGMENT = 1 << 20
# Lucy tables hold n // i in int64
_LUCY_LIMIT = 2**63 - 1
_SMALL_PRIMES = (2, 3, 5, 7, 11)
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _physical_memory():
    try:
        return os.sysconf("SC_PHYS_PAGES") * os.sysconf("SC_PAGE_SIZE")
    except (ValueError, OSError, AttributeError):
        return None


def odd_slots(bound: int) -> int:
    """Number of odd integers in ``[3, bound]``."""
    return max(0, (bound - 1) // 2)


def odd_sieve(bound: int) -> np.ndarray:
    """Boolean primality of ``3, 5, 7, ... <= bound`` (index i <-> 2i+3)."""
    m = odd_slots(bound)
    bits = np.ones(m, dtype=bool)
    for i in range(max(0, (isqrt(bound) - 1) // 2)):
        if bits[i]:
            p = 2 * i + 3
            bits[(p * p - 3) // 2 :: p] = False
    return bits


def miller_rabin(n: int) -> bool:
    """Deterministic Miller-Rabin over bases 2..37; exact below 318665857834031151167461."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def lucy_prime_count(n: int, root_primes=None) -> int:
    """Count primes ``<= n`` in O(n^(3/4)) time and O(sqrt(n)) memory.

    ``small[v]`` tracks the count for ``v <= sqrt(n)`` and ``large[i]`` the
    count for ``n // i``; each sieving prime ``p`` removes the integers whose
    smallest prime factor is ``p``. ``root_primes`` must contain every prime
    up to ``isqrt(n)`` in ascending order if given.
    """
    if n < 2:
        return 0
    if n > _LUCY_LIMIT:
        raise ResourceError(f"sublinear counting is limited to n < 2**63, got {n}")
    r = isqrt(n)
    if root_primes is None:
        root_primes = [2] + [2 * i + 3 for i in np.flatnonzero(odd_sieve(r)).tolist()]
    small = np.arange(-1, r, dtype=np.int64)
    small[0] = 0
    large = np.empty(r + 1, dtype=np.int64)
    large[0] = 0
    large[1:] = n // np.arange(1, r + 1, dtype=np.int64) - 1
    for j, p in enumerate(root_primes):
        p2 = p * p
        if p2 > n:
            break
        # j == pi(p - 1) once all smaller primes are processed
        top = min(r, n // p2)
        k = min(top, r // p)
        if k >= 1:
            large[1 : k + 1] -= large[p : k * p + 1 : p] - j
        if top > k:
            i = np.arange(k + 1, top + 1, dtype=np.int64)
            large[k + 1 : top + 1] -= small[n // (i * p)] - j
        if p2 <= r:
            v = np.arange(p2, r + 1, dtype=np.int64)
            small[p2:] -= small[v // p] - j
    return int(large[1])


def nth_prime_bracket(n: int) -> tuple[int, int]:
    """Explicit bounds ``lo <= p_n <= hi``.

    Uses n(ln n + ln ln n - 1) <= p_n <= n(ln n + ln ln n) for n >= 6 and an
    exact table below that.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    if n <= len(_SMALL_PRIMES):
        p = _SMALL_PRIMES[n - 1]
        return p, p
    ln = math.log(n)
    lnln = math.log(ln)
    lo = n * (ln + lnln - 1.0)
    hi = n * (ln + lnln)
    return max(2, int(lo * (1 - 1e-12))), int(hi * (1 + 1e-12)) + 1


def _riemann_r_approx(x: float) -> float:
    return float(expi(math.log(x)) - 0.5 * expi(0.5 * math.log(x)))


def nth_prime_estimate(n: int) -> int:
    """Inverse of ``li(x) - li(sqrt x)/2`` by Newton iteration; not exact."""
    if n < 6:
        return _SMALL_PRIMES[n - 1]
    x = n * math.log(n)
    for _ in range(8):
        step = (_riemann_r_approx(x) - n) * math.log(x)
        x = max(2.0, x - step)
        if abs(step) < 0.5:
            break
    return int(x)


class PrimeIndexer:
    """Immutable answer engine for is_prime, pi and pi^-1.

    Use :func:`build_indexer` (or ``eratosthenes_rays.cache``) to construct
    one. All query methods are read-only; the only lazily filled state is a
    memo of ``pi(count_bound)``, which is idempotent.
    """

    def __init__(self, sieve_bound: int, count_bound: int, odd_bits: np.ndarray):
        self._sieve_bound = sieve_bound
        self._count_bound = count_bound
        if odd_bits.shape != (odd_slots(sieve_bound),) or odd_bits.dtype != np.bool_:
            raise ParameterError("odd_bits does not match sieve_bound")
        odd_bits.flags.writeable = False
        self._odd = odd_bits

        m = odd_bits.size
        full = m // _BLOCK
        counts = np.zeros(full + (1 if m % _BLOCK else 0), dtype=np.int64)
        if full:
            counts[:full] = odd_bits[: full * _BLOCK].reshape(full, _BLOCK).sum(axis=1)
        if m % _BLOCK:
            counts[full] = np.count_nonzero(odd_bits[full * _BLOCK :])
        self._prefix = np.concatenate(([0], np.cumsum(counts)))
        self._dense_count = self._dense_pi(sieve_bound)

        root = isqrt(count_bound)
        if root <= sieve_bound:
            root_odd = odd_bits[: odd_slots(root)]
        else:
            root_odd = odd_sieve(root)
        self._root_primes = [2] + (2 * np.flatnonzero(root_odd) + 3).tolist()
        self._pi_count_bound = None

    def __repr__(self):
        return f"PrimeIndexer(sieve_bound={self._sieve_bound}, count_bound={self._count_bound})"

    @property
    def sieve_bound(self) -> int:
        return self._sieve_bound

    @property
    def count_bound(self) -> int:
        return self._count_bound

    @property
    def odd_bits(self) -> np.ndarray:
        """Read-only view of the dense sieve (bit i <-> 2i+3)."""
        return self._odd

    def _check_range(self, x: int, name: str, minimum: int = 0) -> int:
        x = natural(x, name, minimum)
        if x > self._count_bound:
            raise RangeError(f"{name}={x} exceeds count_bound={self._count_bound}")
        return x

    # -- dense sieve paths ---------------------------------------------------

    def _dense_pi(self, x: int) -> int:
        if x < 2:
            return 0
        if x < 3:
            return 1
        i = (x - 3) // 2
        k = (i + 1) // _BLOCK
        return 1 + int(self._prefix[k]) + int(np.count_nonzero(self._odd[k * _BLOCK : i + 1]))

    def _dense_nth(self, n: int) -> int:
        if n == 1:
            return 2
        t = n - 1
        k = int(np.searchsorted(self._prefix, t, side="left")) - 1
        block = np.flatnonzero(self._odd[k * _BLOCK : (k + 1) * _BLOCK])
        return 2 * (k * _BLOCK + int(block[t - int(self._prefix[k]) - 1])) + 3

    def _dense_is_prime(self, n: int) -> bool:
        if n < 3:
            return n == 2
        return n % 2 == 1 and bool(self._odd[(n - 3) // 2])

    # -- public queries ------------------------------------------------------

    def is_prime(self, n: int) -> bool:
        n = self._check_range(n, "n", 1)
        if n <= self._sieve_bound:
            return self._dense_is_prime(n)
        return miller_rabin(n)

    def is_nonprime(self, n: int) -> bool:
        """Membership in {1} union the composites."""
        return not self.is_prime(n)

    def prime_count(self, x: int) -> int:
        """pi(x): the number of primes <= x."""
        x = self._check_range(x, "x")
        if x <= self._sieve_bound:
            return self._dense_pi(x)
        return lucy_prime_count(x, self._root_primes)

    def prime_count_interval(self, a: int, b: int) -> int:
        """Number of primes strictly between ``a`` and ``b`` (either order)."""
        a = self._check_range(a, "a")
        b = self._check_range(b, "b")
        lo, hi = min(a, b), max(a, b)
        if hi - lo <= 1:
            return 0
        return self.prime_count(hi - 1) - self.prime_count(lo)

    def interval_count_by_enumeration(self, a: int, b: int) -> int:
        """Same as :meth:`prime_count_interval`, read directly off the sieve bits.

        Only valid while both endpoints are within ``sieve_bound``.
        """
        lo, hi = min(a, b), max(a, b)
        if lo < 0 or hi > self._sieve_bound:
            raise RangeError(f"enumeration needs endpoints <= sieve_bound={self._sieve_bound}")
        i0 = max(0, (lo - 3) // 2 + 1)
        i1 = max(0, (hi - 2) // 2)
        two = 1 if lo < 2 < hi else 0
        return two + (int(np.count_nonzero(self._odd[i0:i1])) if i1 > i0 else 0)

    def pi_of_count_bound(self) -> int:
        if self._pi_count_bound is None:
            self._pi_count_bound = self.prime_count(self._count_bound)
        return self._pi_count_bound

    def nth_prime(self, n: int) -> int:
        """pi^-1(n): the n-th prime, exactly.

        Raises :class:`ResultOutOfBound` when ``p_n > count_bound``.
        """
        n = natural(n, "n", 1)
        if n <= self._dense_count:
            return self._dense_nth(n)
        lo, hi = nth_prime_bracket(n)
        if lo > self._count_bound:
            raise ResultOutOfBound(f"p_{n} >= {lo} exceeds count_bound={self._count_bound}")
        if hi > self._count_bound:
            if n > self.pi_of_count_bound():
                raise ResultOutOfBound(f"p_{n} exceeds count_bound={self._count_bound}")
            hi = self._count_bound
        # n > pi(sieve_bound), so p_n lies above the dense sieve
        lo = max(lo, self._sieve_bound + 1)
        if lo > hi:
            raise AssertionError(f"empty bracket for p_{n}: [{lo}, {hi}]")
        guess = min(max(nth_prime_estimate(n), lo), hi)
        count = self.prime_count(guess)
        if count >= n:
            # p_n <= guess: skip the (count - n) largest primes <= guess
            excess = count - n
            seg_hi = guess
            while seg_hi >= lo:
                seg_lo = max(lo, seg_hi - 2 * _SEGMENT + 1)
                found = self.primes_between(seg_lo, seg_hi)
                if found.size > excess:
                    return int(found[found.size - 1 - excess])
                excess -= found.size
                seg_hi = seg_lo - 1
        else:
            missing = n - count
            seg_lo = guess + 1
            while seg_lo <= hi:
                seg_hi = min(hi, seg_lo + 2 * _SEGMENT - 1)
                found = self.primes_between(seg_lo, seg_hi)
                if found.size >= missing:
                    return int(found[missing - 1])
                missing -= found.size
                seg_lo = seg_hi + 1
        raise AssertionError(f"p_{n} fell outside its bracket [{lo}, {hi}]")

    def primes_between(self, lo: int, hi: int) -> np.ndarray:
        """All primes ``p`` with ``lo <= p <= hi`` as an ascending int64 array."""
        lo = max(lo, 2)
        if hi > self._count_bound:
            raise RangeError(f"hi={hi} exceeds count_bound={self._count_bound}")
        if hi < lo:
            return np.empty(0, dtype=np.int64)
        head = [2] if lo == 2 else []
        first = max(3, lo | 1)
        if hi < first:
            return np.array(head, dtype=np.int64)
        if hi <= self._sieve_bound:
            i0, i1 = (first - 3) // 2, (hi - 3) // 2 + 1
            odd = 2 * (np.flatnonzero(self._odd[i0:i1]) + i0) + 3
        else:
            odd = _segment_odd_primes(first, hi, self._root_primes)
        return np.concatenate((np.array(head, dtype=np.int64), odd.astype(np.int64)))


def _segment_odd_primes(first: int, hi: int, root_primes) -> np.ndarray:
    """Odd primes in ``[first, hi]`` for odd ``first``; root_primes cover isqrt(hi)."""
    out = []
    root = isqrt(hi)
    while first <= hi:
        last = min(hi, first + 2 * (_SEGMENT - 1))
        m = (last - first) // 2 + 1
        seg = np.ones(m, dtype=bool)
        for p in root_primes[1:]:
            if p > root:
                break
            start = max(p * p, -(-first // p) * p)
            if start % 2 == 0:
                start += p
            if start <= last:
                seg[(start - first) // 2 :: p] = False
        out.append(first + 2 * np.flatnonzero(seg))
        first = last + 2
    return np.concatenate(out) if out else np.empty(0, dtype=np.int64)


def build_indexer(
    sieve_bound: int = DEFAULT_SIEVE_BOUND, count_bound: int = DEFAULT_COUNT_BOUND
) -> PrimeIndexer:
    """Sieve up to ``sieve_bound`` and prepare counting up to ``count_bound``.

    Construction is deterministic: equal bounds give identical tables.
    """
    sieve_bound = natural(sieve_bound, "sieve_bound", 1)
    count_bound = natural(count_bound, "count_bound", 1)
    if sieve_bound < 2:
        raise ParameterError("sieve_bound must be >= 2")
    if count_bound < sieve_bound:
        raise ParameterError(
            f"count_bound={count_bound} must be >= sieve_bound={sieve_bound}"
        )
    check_resources(sieve_bound, count_bound)
    try:
        bits = odd_sieve(sieve_bound)
    except MemoryError as exc:
        raise ResourceError(f"cannot allocate a sieve up to {sieve_bound}") from exc
    return PrimeIndexer(sieve_bound, count_bound, bits)


def check_resources(sieve_bound: int, count_bound: int) -> None:
    """Reject bounds whose tables cannot fit in physical memory."""
    if count_bound > _LUCY_LIMIT:
        raise ResourceError(f"count_bound={count_bound} exceeds the 2**63 counting limit")
    root = isqrt(count_bound)
    # dense sieve bytes + a separate root sieve + ~4 int64 Lucy arrays of sqrt size
    need = odd_slots(sieve_bound) + (odd_slots(root) if root > sieve_bound else 0) + 32 * root
    mem = _physical_memory()
    if mem is not None and need > mem:
        raise ResourceError(
            f"bounds ({sieve_bound}, {count_bound}) need ~{need} bytes, "
            f"more than the {mem} bytes of physical memory"
        )
