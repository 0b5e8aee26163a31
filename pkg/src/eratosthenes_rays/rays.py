"""Eratosthenes rays: iterated nth-prime progressions and their matrix.

The ray seeded at ``p0`` is ``p0, p1, p2, ...`` with ``p_{k+1} = pi^-1(p_k)``.
Seeding one ray at every non-prime (1, 4, 6, 8, 9, ...) gives rows that
partition the primes; row ``mu`` is seeded at the ``mu``-th non-prime and the
column ``nu`` of an entry counts how many steps it sits from its seed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .errors import ParameterError, RangeError, natural
from .primecore import PrimeIndexer


class Truncation(enum.Enum):
    REACHED_LIMIT = "ReachedLimit"
    COUNT_BOUND_EXCEEDED = "CountBoundExceeded"


class Column(enum.Enum):
    FIRST_COLUMN = "FirstColumn"
    DEEP_COLUMN = "DeepColumn"


class MatrixCoord(NamedTuple):
    mu: int
    nu: int


class Descent(NamedTuple):
    seed: int
    depth: int


@dataclass(frozen=True)
class Ray:
    """A finite prefix of one ray.

    ``truncation`` says why the prefix stops: the next element is above
    ``bound``, which is either the caller's limit or the indexer's count bound.
    """

    seed: int
    elements: tuple[int, ...]
    truncation: Truncation
    bound: int

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def primes(self) -> tuple[int, ...]:
        """Elements at column >= 1 (all prime)."""
        return self.elements[1:]

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "elements": list(self.elements),
            "truncation": self.truncation.value,
            "bound": self.bound,
        }


@dataclass(frozen=True)
class RayMatrix:
    """Finite upper-left corner of the ray matrix, one :class:`Ray` per row."""

    row_seeds: tuple[int, ...]
    rows: tuple[Ray, ...]
    element_limit: int
    _index: dict = field(init=False, repr=False, compare=False)
    collisions: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index, collisions = {}, []
        for mu, nu, value in self.entries():
            if value in index:
                collisions.append((value, index[value], MatrixCoord(mu, nu)))
            else:
                index[value] = MatrixCoord(mu, nu)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "collisions", tuple(collisions))

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def __len__(self):
        return sum(len(r) for r in self.rows)

    def entries(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(mu, nu, value)`` row by row, seeds included."""
        for mu, ray in enumerate(self.rows, start=1):
            for nu, value in enumerate(ray.elements):
                yield mu, nu, value

    def value_at(self, mu: int, nu: int) -> int:
        return self.rows[mu - 1].elements[nu]

    def coord_of(self, n: int) -> MatrixCoord | None:
        return self._index.get(n)

    @property
    def first_column(self) -> tuple[int, ...]:
        return tuple(r.elements[1] for r in self.rows if len(r) > 1)

    def to_dict(self) -> dict:
        return {
            "element_limit": self.element_limit,
            "row_seeds": list(self.row_seeds),
            "rows": [r.to_dict() for r in self.rows],
        }


def _extend(idx: PrimeIndexer, seed: int, limit: int, pi_limit: int) -> Ray:
    elements = [seed]
    cur = seed
    # p_cur <= limit exactly when cur <= pi(limit)
    while cur <= pi_limit:
        cur = idx.nth_prime(cur)
        elements.append(cur)
    if limit >= idx.count_bound:
        return Ray(seed, tuple(elements), Truncation.COUNT_BOUND_EXCEEDED, idx.count_bound)
    return Ray(seed, tuple(elements), Truncation.REACHED_LIMIT, limit)


def _check_limit(idx: PrimeIndexer, limit: int) -> int:
    limit = natural(limit, "limit", 1)
    if limit > idx.count_bound:
        raise RangeError(f"limit={limit} exceeds count_bound={idx.count_bound}")
    return limit


def extend_ray(idx: PrimeIndexer, seed: int, limit: int) -> Ray:
    """The longest prefix of the ray at ``seed`` with every element <= ``limit``.

    Prime seeds are accepted; they give tails of non-prime-seeded rays.
    """
    seed = natural(seed, "seed", 1)
    limit = _check_limit(idx, limit)
    if seed > limit:
        raise ParameterError(f"seed={seed} exceeds limit={limit}")
    return _extend(idx, seed, limit, idx.prime_count(limit))


def descend(idx: PrimeIndexer, n: int) -> Descent:
    """Apply pi while the value is prime; return the non-prime reached and the step count."""
    n = natural(n, "n", 1)
    depth = 0
    while idx.is_prime(n):
        n = idx.prime_count(n)
        depth += 1
    return Descent(n, depth)


def classify(idx: PrimeIndexer, p: int) -> Column:
    """FIRST_COLUMN if pi(p) is non-prime, DEEP_COLUMN if pi(p) is prime."""
    if not idx.is_prime(p):
        raise ParameterError(f"{p} is not prime")
    return Column.DEEP_COLUMN if idx.is_prime(idx.prime_count(p)) else Column.FIRST_COLUMN


def nth_nonprime(idx: PrimeIndexer, mu: int) -> int:
    """The ``mu``-th element of 1, 4, 6, 8, 9, 10, 12, ...

    Found by bisection on ``x - pi(x)``, which steps by one at each non-prime.
    """
    mu = natural(mu, "mu", 1)
    hi = idx.sieve_bound
    if hi - idx.prime_count(hi) < mu:
        raise RangeError(f"non-prime #{mu} lies beyond sieve_bound={hi}")
    lo = mu
    while lo < hi:
        mid = (lo + hi) // 2
        if mid - idx.prime_count(mid) >= mu:
            hi = mid
        else:
            lo = mid + 1
    return lo


def nonprimes_upto(idx: PrimeIndexer, bound: int) -> Iterator[int]:
    for n in range(1, bound + 1):
        if not idx.is_prime(n):
            yield n


def build_matrix(idx: PrimeIndexer, num_rows: int, element_limit: int) -> RayMatrix:
    """Rays over the first ``num_rows`` non-primes, truncated at ``element_limit``."""
    num_rows = natural(num_rows, "num_rows", 1)
    element_limit = _check_limit(idx, element_limit)
    seeds = []
    for n in nonprimes_upto(idx, idx.sieve_bound):
        seeds.append(n)
        if len(seeds) == num_rows:
            break
    else:
        raise RangeError(f"fewer than {num_rows} non-primes below sieve_bound")
    if seeds[-1] > element_limit:
        raise ParameterError(
            f"element_limit={element_limit} is below row seed {seeds[-1]}"
        )
    pi_limit = idx.prime_count(element_limit)
    rows = tuple(_extend(idx, s, element_limit, pi_limit) for s in seeds)
    return RayMatrix(tuple(seeds), rows, element_limit)
