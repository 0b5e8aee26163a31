"""Rays: start at a non-prime seed and keep taking the nth prime.

1 -> 2 -> 3 -> 5 -> 11 -> 31 -> ...   each step is p_{k+1} = p(p_k).
Seeding every non-prime once gives a matrix whose entries after column 0
cover every prime exactly once.
"""
from eratosthenes_rays import build_indexer, build_matrix, classify, descend, extend_ray

idx = build_indexer(10**6, 10**9)

# %% one ray
r = extend_ray(idx, 1, 10**9)
print(r.elements, r.truncation.name)

# %% the top-left corner
m = build_matrix(idx, 6, 20000)
width = len(str(max(v for _, _, v in m.entries())))
for row in m.rows:
    print(" ".join(f"{v:>{width}}" for v in row.elements))

# %% walk any prime back to its seed
for q in (2, 7, 13, 15299, 19577):
    seed, depth = descend(idx, q)
    print(f"{q:>6} sits in the ray of {seed} at depth {depth}; {classify(idx, q).name}")

# %% a ray seeded at a prime is a tail of its home ray
home = extend_ray(idx, descend(idx, 7).seed, 10**6).elements
tail = extend_ray(idx, 7, 10**6).elements
print(home, tail, home[home.index(7):] == tail)
