"""Exhaustive checks of the structural claims up to a limit.

Every check reports instances tested and replayable counterexamples.
"""
from eratosthenes_rays import VerifyConfig, build_indexer, run_all
from eratosthenes_rays.rays import build_matrix
from eratosthenes_rays.verify import verify_gap_growth, verify_partition

idx = build_indexer(10**6, 10**9)

report = run_all(idx, VerifyConfig(limit=10**5, element_limit=10**6))
print(report.format_text())

# %% individual checks
part = verify_partition(idx, 10**6)
print(part.check_id, part.status.name, part.instances_tested)

# gaps along a ray grow faster than p (ln p - 1)
m = build_matrix(idx, 10, 10**9)
gap = verify_gap_growth(m)
print(gap.check_id, gap.status.name, gap.instances_tested)
row = m.rows[0].elements
print([b - a for a, b in zip(row, row[1:])])
