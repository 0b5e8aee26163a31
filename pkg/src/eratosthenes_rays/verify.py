"""Empirical checks of the ray partition, interval identities and gap growth.

Every check returns a :class:`CheckResult`; failures are data, never
exceptions. Each :class:`Counterexample` names the operation that produced
its ``actual`` value so :func:`replay` can reproduce it.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from typing import Iterable, Sequence

from .corner import published_entries
from .errors import ResultOutOfBound
from .primecore import PrimeIndexer
from .rays import (
    Column,
    Ray,
    RayMatrix,
    build_matrix,
    classify,
    descend,
    extend_ray,
    nonprimes_upto,
    nth_nonprime,
)

GUARD_BAND = 1e-9

CHECK_IDS = (
    "partition",
    "subset_relations",
    "classification",
    "interval_formulas",
    "gap_growth",
)


class Status(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    SKIPPED = "Skipped"


@dataclass(frozen=True)
class Counterexample:
    operation: str
    inputs: tuple[tuple[str, int], ...]
    expected: int | str
    actual: int

    def to_dict(self) -> dict:
        return {
            "operation": self.operation,
            "inputs": dict(self.inputs),
            "expected": self.expected,
            "actual": self.actual,
        }


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    instances_tested: int
    failures: tuple[Counterexample, ...]
    status: Status
    reason: str | None = None
    details: dict = field(default_factory=dict, compare=False)

    @classmethod
    def collect(cls, check_id, instances, failures, details=None, skip_reason=None):
        failures = tuple(failures)
        if failures:
            status, reason = Status.FAIL, None
        elif instances > 0:
            status, reason = Status.PASS, None
        else:
            status, reason = Status.SKIPPED, skip_reason or "no applicable instances"
        return cls(check_id, instances, failures, status, reason, dict(details or {}))

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        out = {
            "check_id": self.check_id,
            "status": self.status.value,
            "instances_tested": self.instances_tested,
            "failures": [f.to_dict() for f in self.failures],
        }
        if self.reason:
            out["reason"] = self.reason
        if self.details:
            out["details"] = self.details
        return out


@dataclass(frozen=True)
class Discrepancy:
    """A published corner entry that disagrees with the computed value."""

    mu: int
    nu: int
    published: int
    computed: int

    def to_dict(self) -> dict:
        return {"mu": self.mu, "nu": self.nu, "published": self.published, "computed": self.computed}


@dataclass(frozen=True)
class VerificationReport:
    sieve_bound: int
    count_bound: int
    matrix_shape: tuple[int, int]
    results: tuple[CheckResult, ...]
    data_discrepancies: tuple[Discrepancy, ...]

    def result(self, check_id: str) -> CheckResult:
        for r in self.results:
            if r.check_id == check_id:
                return r
        raise KeyError(check_id)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "sieve_bound": self.sieve_bound,
            "count_bound": self.count_bound,
            "matrix_shape": {"rows": self.matrix_shape[0], "element_limit": self.matrix_shape[1]},
            "results": [r.to_dict() for r in self.results],
            "data_discrepancies": [d.to_dict() for d in self.data_discrepancies],
        }

    def format_text(self) -> str:
        lines = [
            f"sieve_bound={self.sieve_bound} count_bound={self.count_bound} "
            f"matrix={self.matrix_shape[0]} rows <= {self.matrix_shape[1]}"
        ]
        for r in self.results:
            line = f"{r.status.value.upper():7} {r.check_id:18} instances={r.instances_tested}"
            if r.reason:
                line += f" ({r.reason})"
            lines.append(line)
            for cx in r.failures[:10]:
                lines.append(
                    f"        {cx.operation}{dict(cx.inputs)}: expected {cx.expected}, got {cx.actual}"
                )
        for d in self.data_discrepancies:
            lines.append(
                f"DISCREPANCY at (mu={d.mu}, nu={d.nu}): published {d.published}, computed {d.computed}"
            )
        return "\n".join(lines)


@dataclass(frozen=True)
class VerifyConfig:
    """Bounds for :func:`run_all`; the defaults run in a few seconds."""

    limit: int = 10**6
    num_rows: int = 10
    element_limit: int = 10**6
    subset_limit: int = 10**4
    subset_seeds: tuple[int, ...] = tuple(range(1, 51))
    interval_sample: int | None = None
    sample_seed: int = 0
    include_r2: bool = True


def replay(idx: PrimeIndexer, cx: Counterexample) -> int:
    """Recompute ``cx.actual`` from ``cx.inputs``."""
    args = dict(cx.inputs)
    op = cx.operation
    if op == "prime_count_interval":
        return idx.prime_count_interval(args["a"], args["b"])
    if op == "interval_count_by_enumeration":
        return idx.interval_count_by_enumeration(args["a"], args["b"])
    if op == "descend.seed":
        return descend(idx, args["n"]).seed
    if op == "descend.depth":
        return descend(idx, args["n"]).depth
    if op == "is_prime":
        return int(idx.is_prime(args["n"]))
    if op == "extend_ray.element":
        return extend_ray(idx, args["seed"], args["limit"]).elements[args["k"]]
    if op == "extend_ray.length":
        return len(extend_ray(idx, args["seed"], args["limit"]))
    if op == "gap":
        return args["p_next"] - args["p_k"]
    raise ValueError(f"unknown operation {op!r}")


def verify_partition(idx: PrimeIndexer, limit: int) -> CheckResult:
    """Every prime <= limit sits in exactly one non-prime-seeded ray.

    Two routes: descent of each prime must land on a non-prime with a
    (seed, depth) slot no other prime uses, and assembling all rays with a
    prime element <= limit must hit every prime exactly once.
    """
    limit = min(limit, idx.count_bound)
    primes = idx.primes_between(2, limit).tolist()
    failures = []
    slots = {}
    for p in primes:
        seed, depth = descend(idx, p)
        if depth < 1 or idx.is_prime(seed):
            failures.append(Counterexample("descend.seed", (("n", p),), "a non-prime seed", seed))
        elif (seed, depth) in slots:
            failures.append(
                Counterexample("descend.seed", (("n", p),),
                               f"slot distinct from prime {slots[(seed, depth)]}", seed)
            )
        else:
            slots[(seed, depth)] = p

    # only seeds <= pi(limit) have a next element <= limit
    owner = {}
    pi_limit = idx.prime_count(limit)
    for s in nonprimes_upto(idx, min(limit, pi_limit)):
        ray = extend_ray(idx, s, limit)
        for nu, v in enumerate(ray.primes, start=1):
            if v in owner:
                failures.append(
                    Counterexample("descend.seed", (("n", v),),
                                   f"unique ray, already in ray of {owner[v]}", descend(idx, v).seed)
                )
                continue
            owner[v] = s
            if slots.get((s, nu)) != v:
                failures.append(
                    Counterexample("descend.depth", (("n", v),), nu, descend(idx, v).depth)
                )
    prime_set = set(primes)
    for p in sorted(prime_set - owner.keys()):
        failures.append(Counterexample("is_prime", (("n", p),), "covered by some ray", 1))
    for v in sorted(owner.keys() - prime_set):
        failures.append(Counterexample("is_prime", (("n", v),), 1, int(idx.is_prime(v))))
    return CheckResult.collect(
        "partition", len(primes), failures,
        details={"limit": limit, "rays_assembled": len(set(owner.values()))},
    )


def verify_subset_relations(
    idx: PrimeIndexer, limit: int, sample_seeds: Iterable[int]
) -> CheckResult:
    """Rays from arbitrary seeds are tails of non-prime-seeded rays.

    Checked on prime elements only: for each sampled seed q the ray r_q must
    equal the ray of descend(q).seed from column descend(q).depth onward.
    """
    limit = min(limit, idx.count_bound)
    failures = []
    instances = 0
    skipped = 0
    for q in sample_seeds:
        if q < 1 or q > limit:
            skipped += 1
            continue
        ray = extend_ray(idx, q, limit)
        seed, depth = descend(idx, q)
        if idx.is_prime(seed):
            failures.append(Counterexample("descend.seed", (("n", q),), "a non-prime seed", seed))
            continue
        tail = extend_ray(idx, seed, limit).elements[depth:]
        # a prime seed is itself a prime element
        instances += len(ray) if depth else len(ray) - 1
        if len(tail) != len(ray):
            failures.append(
                Counterexample("extend_ray.length", (("seed", q), ("limit", limit)), len(tail), len(ray))
            )
            continue
        for k, (mine, home) in enumerate(zip(ray.elements, tail)):
            if mine != home:
                failures.append(
                    Counterexample("extend_ray.element",
                                   (("seed", q), ("limit", limit), ("k", k)), home, mine)
                )
                break
    return CheckResult.collect(
        "subset_relations", instances, failures,
        details={"limit": limit, "seeds_out_of_range": skipped},
    )


def verify_classification(idx: PrimeIndexer, limit: int) -> CheckResult:
    """FirstColumn exactly when the descent depth is 1, DeepColumn when >= 2."""
    limit = min(limit, idx.count_bound)
    primes = idx.primes_between(2, limit).tolist()
    failures = []
    for p in primes:
        first = classify(idx, p) is Column.FIRST_COLUMN
        depth = descend(idx, p).depth
        if first != (depth == 1) or (not first) != (depth >= 2):
            failures.append(
                Counterexample("descend.depth", (("n", p),), 1 if first else ">= 2", depth)
            )
    return CheckResult.collect("classification", len(primes), failures, details={"limit": limit})


def interval_cases(matrix: RayMatrix):
    """All ``(line, a, b, expected)`` instances of the three interval identities."""
    rows = [r.elements for r in matrix.rows]
    for row in rows:
        if len(row) > 1:
            yield 1, row[1], 0, row[0] - 1
    for row in rows:
        for nu1 in range(1, len(row)):
            for nu2 in range(nu1 + 1, len(row)):
                yield 2, row[nu1], row[nu2], row[nu2 - 1] - row[nu1 - 1] - 1
    for mu1, row1 in enumerate(rows):
        for mu2, row2 in enumerate(rows):
            if mu1 == mu2:
                continue
            for nu1 in range(1, len(row1)):
                for nu2 in range(1, len(row2)):
                    yield 3, row1[nu1], row2[nu2], abs(row1[nu1 - 1] - row2[nu2 - 1]) - 1


def verify_interval_formulas(
    idx: PrimeIndexer, matrix: RayMatrix, sample: int | None = None, seed: int = 0
) -> CheckResult:
    """Open-interval prime counts between matrix entries versus their predecessors.

    Counts come from pi differences; below sieve_bound they are also read
    straight off the sieve bits and the two must agree.
    """
    cases = list(interval_cases(matrix))
    if sample is not None and len(cases) > sample:
        keep = sorted(random.Random(seed).sample(range(len(cases)), sample))
        cases = [cases[i] for i in keep]

    pi_memo = {}

    def pi(x):
        if x not in pi_memo:
            pi_memo[x] = idx.prime_count(x)
        return pi_memo[x]

    failures = []
    per_line = {1: 0, 2: 0, 3: 0}
    enumerated = skipped = 0
    for line, a, b, expected in cases:
        lo, hi = min(a, b), max(a, b)
        if hi > idx.count_bound:
            skipped += 1
            continue
        per_line[line] += 1
        if hi <= idx.sieve_bound:
            actual = idx.prime_count_interval(a, b)
        else:
            actual = 0 if hi - lo <= 1 else pi(hi - 1) - pi(lo)
        if actual != expected:
            failures.append(
                Counterexample("prime_count_interval", (("a", a), ("b", b)), expected, actual)
            )
        if hi <= idx.sieve_bound:
            enumerated += 1
            direct = idx.interval_count_by_enumeration(a, b)
            if direct != actual:
                failures.append(
                    Counterexample("interval_count_by_enumeration", (("a", a), ("b", b)), actual, direct)
                )
    details = {
        "line1": per_line[1],
        "line2": per_line[2],
        "line3": per_line[3],
        "enumeration_cross_checked": enumerated,
        "skipped_above_count_bound": skipped,
    }
    return CheckResult.collect("interval_formulas", sum(per_line.values()), failures, details=details)


def gap_exceeds_bound(gap: int, p: int) -> bool:
    """Decide ``gap > p * (ln p - 1)``, falling back to 50-digit logs near the edge."""
    rhs = p * (math.log(p) - 1.0)
    if abs(gap - rhs) > GUARD_BAND * max(1.0, abs(rhs)):
        return gap > rhs
    with localcontext() as ctx:
        ctx.prec = 50
        exact = Decimal(p) * (Decimal(p).ln() - 1)
        return Decimal(gap) > exact


def verify_gap_growth(matrix: RayMatrix, extra_rays: Sequence[Ray] = ()) -> CheckResult:
    """Per ray: gaps beat p(ln p - 1), and gaps strictly increase.

    Only adjacent pairs whose smaller element is >= 2 take part, in both
    sub-checks; the seed-1 row therefore starts at the pair (2, 3).
    """
    failures = []
    pairs_checked = diffs_checked = 0
    for ray in list(matrix.rows) + list(extra_rays):
        pairs = [(a, b) for a, b in zip(ray.elements, ray.elements[1:]) if a >= 2]
        prev = None
        for a, b in pairs:
            gap = b - a
            pairs_checked += 1
            if not gap_exceeds_bound(gap, a):
                rhs = a * (math.log(a) - 1.0)
                failures.append(
                    Counterexample("gap", (("p_k", a), ("p_next", b)), f"> {rhs:.6f}", gap)
                )
            if prev is not None:
                diffs_checked += 1
                if gap <= prev:
                    failures.append(Counterexample("gap", (("p_k", a), ("p_next", b)), f"> {prev}", gap))
            prev = gap
    return CheckResult.collect(
        "gap_growth", pairs_checked + diffs_checked, failures,
        details={"inequality_pairs": pairs_checked, "difference_steps": diffs_checked},
    )


def compare_published(idx: PrimeIndexer) -> tuple[Discrepancy, ...]:
    """Recompute every published corner entry from its left neighbour."""
    published = {}
    for mu, nu, value in published_entries():
        published[(mu, nu)] = value
    found = []
    for (mu, nu), value in sorted(published.items()):
        if nu == 0:
            computed = nth_nonprime(idx, mu)
        else:
            try:
                computed = idx.nth_prime(published[(mu, nu - 1)])
            except ResultOutOfBound:
                continue
        if computed != value:
            found.append(Discrepancy(mu, nu, value, computed))
    return tuple(found)


def run_all(idx: PrimeIndexer, config: VerifyConfig | None = None) -> VerificationReport:
    """Run every check in a fixed order and compare the published corner."""
    config = config or VerifyConfig()
    element_limit = min(config.element_limit, idx.count_bound)
    matrix = build_matrix(idx, config.num_rows, element_limit)
    extra = (extend_ray(idx, 2, element_limit),) if config.include_r2 and element_limit >= 2 else ()
    results = (
        verify_partition(idx, config.limit),
        verify_subset_relations(idx, config.subset_limit, config.subset_seeds),
        verify_classification(idx, config.limit),
        verify_interval_formulas(idx, matrix, config.interval_sample, config.sample_seed),
        verify_gap_growth(matrix, extra),
    )
    return VerificationReport(
        sieve_bound=idx.sieve_bound,
        count_bound=idx.count_bound,
        matrix_shape=(matrix.num_rows, element_limit),
        results=results,
        data_discrepancies=compare_published(idx),
    )
