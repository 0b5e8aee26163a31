"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's code paths: a plain
full-width byte sieve and trial division.
"""

from math import isqrt

import numpy as np
import pytest

from eratosthenes_rays.primecore import build_indexer


def oracle_sieve(n):
    """``flags[k]`` is True iff k is prime, for 0 <= k <= n."""
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def trial_division(n):
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


@pytest.fixture(scope="session")
def sieve_1e6():
    return oracle_sieve(10**6)


@pytest.fixture(scope="session")
def oracle_pi(sieve_1e6):
    """Cumulative prime counts for 0..10**6."""
    return np.cumsum(sieve_1e6)


@pytest.fixture(scope="session")
def idx():
    """Dense to 10**6, counting to 10**9: exercises both counting paths."""
    return build_indexer(10**6, 10**9)


@pytest.fixture(scope="session")
def tiny():
    return build_indexer(30, 30)


@pytest.fixture(scope="session")
def split_idx():
    """Small dense sieve so most queries go through the sublinear path."""
    return build_indexer(1000, 10**8)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
