"""Counting and indexing primes at three scales.

Dense sieve lookups below sieve_bound, sublinear counting above it, and
nth_prime stitched from the two.
"""
from time import perf_counter

from eratosthenes_rays import build_indexer

idx = build_indexer(10**7, 10**11)
print(idx)

# %% pi(x) for powers of ten; the dense path handles the first few
for e in range(1, 12):
    t = perf_counter()
    print(f"pi(1e{e:<2}) = {idx.prime_count(10**e):>12}   {perf_counter() - t:.3f}s")

# %% nth_prime inverts prime_count
for n in (1, 10, 1787, 5381, 10**6, 5 * 10**7):
    p = idx.nth_prime(n)
    assert idx.prime_count(p) == n and idx.is_prime(p)
    print(f"p({n}) = {p}")

# %% primes strictly between two numbers, in either order
print(idx.prime_count_interval(5, 11), idx.prime_count_interval(11, 5))
print(idx.primes_between(10**10, 10**10 + 100))
