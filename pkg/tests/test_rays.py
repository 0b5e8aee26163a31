import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eratosthenes_rays.corner import PUBLISHED_CORNER, trusted_rows
from eratosthenes_rays.errors import ParameterError, RangeError
from eratosthenes_rays.rays import (
    Column,
    MatrixCoord,
    Truncation,
    build_matrix,
    classify,
    descend,
    extend_ray,
    nth_nonprime,
)

from conftest import trial_division


@pytest.mark.parametrize(
    "seed, limit, expected",
    [
        (1, 10**4, (1, 2, 3, 5, 11, 31, 127, 709, 5381)),
        (4, 2 * 10**4, (4, 7, 17, 59, 277, 1787, 15299)),
        (8, 2 * 10**4, (8, 19, 67, 331, 2221, 19577)),
        (6, 6, (6,)),
    ],
)
def test_extend_ray_examples(idx, seed, limit, expected):
    ray = extend_ray(idx, seed, limit)
    assert ray.elements == expected
    assert ray.truncation is Truncation.REACHED_LIMIT
    assert ray.bound == limit


def test_extend_ray_count_bound_truncation(tiny):
    ray = extend_ray(tiny, 1, 30)
    assert ray.elements == (1, 2, 3, 5, 11)
    assert ray.truncation is Truncation.COUNT_BOUND_EXCEEDED
    assert ray.bound == 30


def test_extend_ray_errors(idx):
    with pytest.raises(ParameterError):
        extend_ray(idx, 0, 100)
    with pytest.raises(RangeError):
        extend_ray(idx, 1, idx.count_bound + 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5000))
def test_ray_invariants(idx, seed):
    ray = extend_ray(idx, seed, 10**7)
    assert ray.elements[0] == seed
    assert idx.is_prime(seed) == trial_division(seed)
    for a, b in zip(ray.elements, ray.elements[1:]):
        assert a < b
        assert idx.is_prime(b)
        assert idx.prime_count(b) == a


@pytest.mark.parametrize("n, expected", [(17, (4, 2)), (31, (1, 5)), (9, (9, 0)), (1, (1, 0))])
def test_descend_examples(idx, n, expected):
    assert tuple(descend(idx, n)) == expected


@pytest.mark.parametrize(
    "p, expected", [(7, Column.FIRST_COLUMN), (5, Column.DEEP_COLUMN), (2, Column.FIRST_COLUMN)]
)
def test_classify_examples(idx, p, expected):
    assert classify(idx, p) is expected


def test_classify_rejects_non_prime(idx):
    with pytest.raises(ParameterError):
        classify(idx, 9)


def test_nth_nonprime_matches_enumeration(idx):
    enumerated = [n for n in range(1, 3000) if not trial_division(n)]
    assert nth_nonprime(idx, 1) == 1
    assert nth_nonprime(idx, 2) == 4
    assert nth_nonprime(idx, 5) == 9
    for mu in range(1, 2000, 37):
        assert nth_nonprime(idx, mu) == enumerated[mu - 1]


def test_nth_nonprime_range(tiny):
    # 30 - pi(30) = 20 non-primes up to 30
    assert nth_nonprime(tiny, 20) == 30
    with pytest.raises(RangeError):
        nth_nonprime(tiny, 21)


def test_build_matrix_published_corner(idx, sieve_1e6):
    m = build_matrix(idx, 4, 2 * 10**4)
    assert m.row_seeds == (1, 4, 6, 8)
    for ray, trusted in zip(m.rows, trusted_rows()):
        assert ray.elements[: len(trusted)] == trusted
    # oracle-checked entry (2, 6) against the brute-force sieve
    oracle_primes = np.flatnonzero(sieve_1e6)
    assert m.value_at(2, 6) == oracle_primes[1787 - 1] == 15299
    assert [len(r) for r in m.rows] == [9, 7, 6, 6]


def test_build_matrix_single_row(idx):
    m = build_matrix(idx, 1, 2)
    assert m.row_seeds == (1,)
    assert m.rows[0].elements == (1, 2)


def test_build_matrix_disjoint(idx):
    m = build_matrix(idx, 10, 10**6)
    values = [v for _, _, v in m.entries()]
    assert len(values) == len(set(values))
    assert m.collisions == ()
    for mu, ray in enumerate(m.rows, start=1):
        if len(ray) > 1:
            assert idx.prime_count(ray.elements[1]) == m.row_seeds[mu - 1]


def test_build_matrix_limit_below_seed(idx):
    with pytest.raises(ParameterError):
        build_matrix(idx, 4, 7)


def test_coord_of(idx):
    m = build_matrix(idx, 4, 2 * 10**4)
    assert m.coord_of(1063) == MatrixCoord(3, 4)
    assert m.coord_of(4) == MatrixCoord(2, 0)
    assert m.coord_of(12) is None
    for mu, nu, v in m.entries():
        assert tuple(descend(idx, v)) == (m.row_seeds[mu - 1], nu)


def test_first_column_matches_classify(idx):
    m = build_matrix(idx, 10, 10**6)
    for mu, nu, v in m.entries():
        if nu >= 1:
            assert (nu == 1) == (classify(idx, v) is Column.FIRST_COLUMN)


def test_sub_ray_property(idx):
    rng = random.Random(8)
    primes = idx.primes_between(2, 10**4).tolist()
    for q in rng.sample(primes, 150) + [2, 7, 13]:
        seed, depth = descend(idx, q)
        home = extend_ray(idx, seed, 10**7)
        assert extend_ray(idx, q, 10**7).elements == home.elements[depth:]


def test_coverage_small(idx):
    limit = 5000
    pi_limit = idx.prime_count(limit)
    collected = set()
    for s in range(1, pi_limit + 1):
        if not idx.is_prime(s):
            collected.update(extend_ray(idx, s, limit).primes)
    assert collected == {n for n in range(2, limit + 1) if trial_division(n)}


def test_published_corner_constant_shape():
    assert [len(r) for r in PUBLISHED_CORNER] == [10, 7, 6, 6]
