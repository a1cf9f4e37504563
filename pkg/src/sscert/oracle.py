"""Brute-force ground truth for desk-scale validation.

Feasibility decisions use meet-in-the-middle over subset sums (weights
are big integers, so value-indexed dynamic programming is not an
option). The module also cross-checks the interval characterization of
certifiable right-hand sides and reports the certified share of
infeasible ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .branching import CertifyStatus, certify, lp_extreme_ineq
from .errors import CapacityError, DomainError
from .rng import SplitMix64

_FEASIBLE_CAP = 32
_SUMS_CAP = 24
_ENUM_CAP = 10**6


@dataclass(frozen=True, slots=True)
class FeasibilityAnswer:
    beta: int
    feasible: bool
    witness: tuple[int, ...] | None

    def __post_init__(self):
        if self.feasible != (self.witness is not None):
            raise DomainError("witness present iff feasible")


@dataclass(frozen=True, slots=True)
class InfeasibleCoverageReport:
    """Certified share among infeasible right-hand sides vs 1 - 1/2^n."""

    mode: str
    infeasible_count: int
    certified_infeasible_count: int
    fraction: Fraction
    bound: Fraction
    sample_size: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.certified_infeasible_count > self.infeasible_count:
            raise DomainError("certified count exceeds infeasible count")


def _validate_weights(a) -> tuple[int, ...]:
    a = tuple(a)
    if not a or any(not isinstance(x, int) or x < 1 for x in a):
        raise DomainError("weights must be integers >= 1")
    return a


def _half_sums(weights: Sequence[int]) -> dict[int, int]:
    """Subset sum -> first achieving bitmask, in mask order."""
    table: dict[int, int] = {}
    sums = [0] * (1 << len(weights))
    for mask in range(1 << len(weights)):
        if mask:
            low = mask & -mask
            sums[mask] = sums[mask ^ low] + weights[low.bit_length() - 1]
        if sums[mask] not in table:
            table[sums[mask]] = mask
    return table


def feasible(a: Sequence[int], beta: int) -> FeasibilityAnswer:
    """Exact subset sum decision by meet-in-the-middle, n <= 32."""
    a = _validate_weights(a)
    n = len(a)
    if n > _FEASIBLE_CAP:
        raise CapacityError(f"feasibility oracle capped at n = {_FEASIBLE_CAP}")
    if beta < 0 or beta > sum(a):
        return FeasibilityAnswer(beta=beta, feasible=False, witness=None)
    n_left = (n + 1) // 2
    left = _half_sums(a[:n_left])
    right = _half_sums(a[n_left:])
    for left_sum, left_mask in left.items():
        right_mask = right.get(beta - left_sum)
        if right_mask is not None:
            witness = tuple(
                (left_mask >> i) & 1 if i < n_left else (right_mask >> (i - n_left)) & 1
                for i in range(n)
            )
            if sum(ai * xi for ai, xi in zip(a, witness)) != beta:
                raise DomainError("oracle witness failed its own check")
            return FeasibilityAnswer(beta=beta, feasible=True, witness=witness)
    return FeasibilityAnswer(beta=beta, feasible=False, witness=None)


def all_feasible_sums(a: Sequence[int]) -> frozenset[int]:
    """Exact subset-sum value set (at most 2^n values), n <= 24."""
    a = _validate_weights(a)
    if len(a) > _SUMS_CAP:
        raise CapacityError(f"sum enumeration capped at n = {_SUMS_CAP}")
    sums = {0}
    for w in a:
        sums |= {s + w for s in sums}
    return frozenset(sums)


def check_good_intervals(
    a: Sequence[int], v: Sequence[int], cap: int = _ENUM_CAP
) -> tuple[bool, tuple[tuple[int, bool, bool], ...]]:
    """Certified betas vs good-interval members, for every integer beta.

    For each beta in {0, ..., ||a||_1} compares the definition (the
    certify range test) against membership in some open interval
    (max(a,k), min(a,k+1)); returns the verdict and any counterexamples
    as (beta, certified, in_interval) triples.
    """
    a = _validate_weights(a)
    v = tuple(v)
    if len(a) > 10 or sum(a) > 10**4:
        raise CapacityError("exhaustive interval check capped at n <= 10, ||a||_1 <= 10^4")
    if not v or any(not isinstance(x, int) or x < 0 for x in v) or max(v) == 0:
        raise DomainError("direction must be a nonzero nonnegative integer vector")
    ve = sum(v)
    if ve > cap:
        raise CapacityError("direction l1 norm exceeds the enumeration cap")
    mins = [lp_extreme_ineq(a, v, k, "min") for k in range(ve + 1)]
    maxs = [lp_extreme_ineq(a, v, k, "max") for k in range(ve + 1)]
    mismatches = []
    for beta in range(sum(a) + 1):
        certified = certify(a, v, beta).status is CertifyStatus.CERTIFIED
        in_interval = any(maxs[k] < beta < mins[k + 1] for k in range(ve))
        if certified != in_interval:
            mismatches.append((beta, certified, in_interval))
    return not mismatches, tuple(mismatches)


def infeasible_coverage_report(
    a: Sequence[int],
    v: Sequence[int],
    mode: str,
    sample_size: int | None = None,
    seed: int | None = None,
) -> InfeasibleCoverageReport:
    """Certified fraction of infeasible right-hand sides.

    Exact mode decides every beta in {0, ..., ||a||_1} with the subset
    sum oracle (n <= 20, range capped). Sampled mode classifies drawn
    betas via certify and cross-checks uncertified ones with the oracle
    when n <= 32; beyond that uncertified draws count as infeasible,
    which can only lower the reported fraction. An empty infeasible
    set reports fraction 1 (vacuous).
    """
    a = _validate_weights(a)
    n = len(a)
    bound = 1 - Fraction(1, 1 << n)
    if mode == "exact":
        if n > 20:
            raise CapacityError("exact mode capped at n = 20")
        total = sum(a)
        if total > _ENUM_CAP:
            raise CapacityError("exact mode needs ||a||_1 within the enumeration cap")
        sums = all_feasible_sums(a)
        infeasible = 0
        certified = 0
        for beta in range(total + 1):
            if beta in sums:
                continue
            infeasible += 1
            if certify(a, v, beta).status is CertifyStatus.CERTIFIED:
                certified += 1
        fraction = Fraction(certified, infeasible) if infeasible else Fraction(1)
        return InfeasibleCoverageReport(
            mode=mode, infeasible_count=infeasible,
            certified_infeasible_count=certified, fraction=fraction, bound=bound,
        )
    if mode != "sampled":
        raise DomainError('mode must be "exact" or "sampled"')
    if not sample_size or sample_size < 1:
        raise DomainError("sampled mode needs sample_size >= 1")
    if seed is None:
        raise DomainError("sampled mode needs a seed")
    rng = SplitMix64(seed)
    total = sum(a)
    infeasible = 0
    certified = 0
    for _ in range(sample_size):
        beta = rng.randint(0, total)
        if certify(a, v, beta).status is CertifyStatus.CERTIFIED:
            certified += 1
            infeasible += 1
        elif n > _FEASIBLE_CAP or not feasible(a, beta).feasible:
            infeasible += 1
    fraction = Fraction(certified, infeasible) if infeasible else Fraction(1)
    return InfeasibleCoverageReport(
        mode=mode, infeasible_count=infeasible,
        certified_infeasible_count=certified, fraction=fraction, bound=bound,
        sample_size=sample_size, seed=seed,
    )
