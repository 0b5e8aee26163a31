import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eratosthenes_rays.errors import (
    NaturalOverflowError,
    ParameterError,
    RangeError,
    ResourceError,
    ResultOutOfBound,
)
from eratosthenes_rays.primecore import (
    build_indexer,
    lucy_prime_count,
    miller_rabin,
    nth_prime_bracket,
    odd_sieve,
)

from conftest import oracle_sieve, trial_division


def test_build_small_primes(tiny):
    found = [n for n in range(1, 31) if tiny.is_prime(n)]
    assert found == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_build_rejects_bad_bounds():
    with pytest.raises(ParameterError):
        build_indexer(100, 50)
    with pytest.raises(ParameterError):
        build_indexer(1, 10)
    with pytest.raises(NaturalOverflowError):
        build_indexer(10, 2**64)


def test_build_absurd_bounds_is_resource_error():
    with pytest.raises(ResourceError):
        build_indexer(2**62, 2**62)
    with pytest.raises(ResourceError):
        build_indexer(100, 2**64 - 1)


def test_build_is_deterministic():
    a, b = build_indexer(10**5, 10**7), build_indexer(10**5, 10**7)
    assert np.array_equal(a.odd_bits, b.odd_bits)
    rng = random.Random(7)
    for _ in range(1000):
        x = rng.randint(1, 10**7)
        assert a.prime_count(x) == b.prime_count(x)
        assert a.is_prime(x) == b.is_prime(x)


def test_indexer_is_read_only(idx):
    with pytest.raises(ValueError):
        idx.odd_bits[0] = False


@pytest.mark.parametrize("n, expected", [(2, True), (1, False), (8527, True), (9, False)])
def test_is_prime_examples(idx, n, expected):
    assert idx.is_prime(n) is expected


def test_is_prime_agrees_with_trial_division(sieve_1e6):
    small = build_indexer(5000, 5000)
    for n in range(1, 5001):
        assert small.is_prime(n) == trial_division(n), n


def test_is_prime_range_errors(idx):
    with pytest.raises(ParameterError):
        idx.is_prime(0)
    with pytest.raises(RangeError):
        idx.is_prime(idx.count_bound + 1)


def test_is_prime_above_sieve_uses_exact_test(split_idx):
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1001, 10**8)
        assert split_idx.is_prime(n) == trial_division(n)


@pytest.mark.parametrize(
    "n, expected",
    [
        (2**61 - 1, True),
        (2**64 - 59, True),  # largest 64-bit prime
        (3825123056546413051, False),  # strong pseudoprime to bases 2..23
        (561, False),
    ],
)
def test_miller_rabin_edge_cases(n, expected):
    assert miller_rabin(n) is expected


def test_miller_rabin_exactness_limit():
    # smallest strong pseudoprime to every base 2..37: the documented limit
    assert miller_rabin(318665857834031151167461) is True
    assert 318665857834031151167461 == 399165290221 * 798330580441


@pytest.mark.parametrize("x, expected", [(0, 0), (1, 0), (2, 1), (5381, 709), (10**6, 78498)])
def test_prime_count_examples(idx, x, expected):
    assert idx.prime_count(x) == expected


def test_prime_count_matches_oracle_everywhere_small(oracle_pi):
    small = build_indexer(20000, 20000)
    for x in range(0, 20001):
        assert small.prime_count(x) == oracle_pi[x]


def test_lucy_matches_dense_sieve(oracle_pi):
    rng = random.Random(11)
    xs = [0, 1, 2, 3, 4, 10**6] + [rng.randint(0, 10**6) for _ in range(300)]
    for x in xs:
        assert lucy_prime_count(x) == oracle_pi[x], x


def test_sublinear_path_matches_oracle(split_idx, oracle_pi):
    rng = random.Random(5)
    for x in [1000, 1001, 1002, 10**6] + [rng.randint(1001, 10**6) for _ in range(200)]:
        assert split_idx.prime_count(x) == oracle_pi[x]


def test_prime_count_known_large(idx):
    # 50847534 cross-checked against sympy.primepi
    assert idx.prime_count(10**9) == 50847534


def test_prime_count_range_error(idx):
    with pytest.raises(RangeError):
        idx.prime_count(10**9 + 1)


@pytest.mark.parametrize("n, expected", [(1, 2), (4, 7), (127, 709), (1787, 15299), (5381, 52711)])
def test_nth_prime_examples(idx, n, expected):
    assert idx.nth_prime(n) == expected


def test_nth_prime_matches_oracle(sieve_1e6, split_idx):
    primes = np.flatnonzero(sieve_1e6)
    rng = random.Random(9)
    ns = list(range(1, 200)) + [rng.randint(1, primes.size) for _ in range(200)] + [primes.size]
    for n in ns:
        assert split_idx.nth_prime(n) == primes[n - 1], n


def test_nth_prime_sublinear_known(idx):
    # value from sympy.prime
    assert idx.nth_prime(5 * 10**7) == 982451653


def test_nth_prime_out_of_bound_is_signal(tiny):
    assert tiny.nth_prime(10) == 29
    with pytest.raises(ResultOutOfBound):
        tiny.nth_prime(11)
    with pytest.raises(ParameterError):
        tiny.nth_prime(0)


def test_nth_prime_bracket_holds(sieve_1e6):
    primes = np.flatnonzero(sieve_1e6)
    for n in range(1, primes.size + 1, 97):
        lo, hi = nth_prime_bracket(n)
        assert lo <= primes[n - 1] <= hi


@pytest.mark.parametrize(
    "a, b, expected", [(7, 0, 3), (3, 5, 0), (5, 11, 1), (7, 3, 1), (2, 3, 0), (4, 4, 0), (0, 3, 1)]
)
def test_interval_examples(idx, a, b, expected):
    assert idx.prime_count_interval(a, b) == expected


def test_interval_consistency_between_primes(sieve_1e6):
    small = build_indexer(10**5, 10**5)
    primes = np.flatnonzero(sieve_1e6[: 10**5 + 1]).tolist()
    rng = random.Random(1)
    for _ in range(3000):
        p, q = sorted(rng.sample(primes, 2))
        assert small.prime_count_interval(p, q) == small.prime_count(q) - small.prime_count(p) - 1


def test_interval_enumeration_agrees(idx, oracle_pi):
    rng = random.Random(4)
    for _ in range(500):
        a, b = rng.randint(0, 10**6), rng.randint(0, 10**6)
        lo, hi = min(a, b), max(a, b)
        want = max(0, int(oracle_pi[hi - 1]) - int(oracle_pi[lo])) if hi > lo else 0
        assert idx.interval_count_by_enumeration(a, b) == want
        assert idx.prime_count_interval(a, b) == want


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_interval_symmetry(idx, a, b):
    assert idx.prime_count_interval(a, b) == idx.prime_count_interval(b, a)


def test_round_trip_small_indices(idx):
    for n in range(1, 10**4 + 1):
        assert idx.prime_count(idx.nth_prime(n)) == n


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 50_000_000))
def test_round_trip_sublinear(idx, n):
    p = idx.nth_prime(n)
    assert idx.is_prime(p)
    assert idx.prime_count(p) == n


def test_primes_between_crosses_sieve_bound(split_idx, sieve_1e6):
    got = split_idx.primes_between(900, 5000)
    want = np.flatnonzero(sieve_1e6[900:5001]) + 900
    assert np.array_equal(got, want)


def test_odd_sieve_layout():
    bits = odd_sieve(30)
    assert [2 * i + 3 for i in np.flatnonzero(bits)] == [3, 5, 7, 11, 13, 17, 19, 23, 29]
    full = oracle_sieve(10**5)
    assert np.array_equal(odd_sieve(10**5), full[3::2])
