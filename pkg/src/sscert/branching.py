"""Infeasibility certificates by branching on one integral hyperplane.

A right-hand side beta is certified infeasible when the exact LP range
[vmin, vmax] of v.x over {x | a.x = beta, 0 <= x <= e} contains no
integer: every point of the relaxation then has a fractional v.x, so
no 0/1 solution exists. The single-constraint LPs are solved by exact
greedy ratio fills (cross-multiplied comparisons, no division), which
match the LP vertex optimum.

The same machinery yields, for each branching level k, a closed "bad"
interval [min(a,k), max(a,k)] and an open "good" interval between
consecutive levels; good intervals contain exactly the certified
right-hand sides, and coverage statistics compare the certified share
against the exact bound 2 (||r||_1 + 1) / scale.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Literal, Sequence

from .errors import (
    CapacityError,
    DomainError,
    InvariantViolation,
    RelaxationInfeasibleError,
)
from .intmath import l1_norm
from .rng import SplitMix64

Sense = Literal["min", "max"]

DEFAULT_ENUMERATION_CAP = 10**6


class CertifyStatus(enum.Enum):
    CERTIFIED = "certified"
    NO_CERTIFICATE = "no_certificate"
    TRIVIALLY_INFEASIBLE = "trivially_infeasible"
    TRIVIALLY_INFEASIBLE_GCD = "trivially_infeasible_gcd"


@dataclass(frozen=True, slots=True)
class Certificate:
    """Proof that level < v.x < level + 1 over the whole relaxation."""

    beta: int
    level: int
    vmin: Fraction
    vmax: Fraction
    arg_min: tuple[Fraction, ...]
    arg_max: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "arg_min", tuple(self.arg_min))
        object.__setattr__(self, "arg_max", tuple(self.arg_max))
        if not self.level < self.vmin <= self.vmax < self.level + 1:
            raise DomainError("certificate bounds must satisfy l < vmin <= vmax < l+1")


@dataclass(frozen=True, slots=True)
class CertifyResult:
    status: CertifyStatus
    beta: int
    certificate: Certificate | None = None


@dataclass(frozen=True, slots=True)
class IntervalCover:
    """Alternating bad/good intervals for levels k_lo..k_hi."""

    k_lo: int
    k_hi: int
    bad: tuple[tuple[Fraction, Fraction], ...]
    good: tuple[tuple[Fraction, Fraction], ...]
    min_good_length: Fraction | None
    good_length_bound: Fraction
    good_length_bound_holds: bool


@dataclass(frozen=True, slots=True)
class CoverageStats:
    """Certified / uncertified split of right-hand sides.

    In exact mode ``g``/``b`` count integers in good/bad intervals over
    the whole range {0, ..., ||a||_1}; in sampled mode they count
    certified/uncertified draws.
    """

    mode: str
    g: int
    b: int
    bad_fraction: Fraction
    bad_fraction_bound: Fraction
    two_pow_n_bound: Fraction
    sample_size: int | None = None
    seed: int | None = None


def _validate_weights(a) -> tuple[int, ...]:
    a = tuple(a)
    if not a or any(not isinstance(x, int) or x < 1 for x in a):
        raise DomainError("weights must be integers >= 1")
    return a


def _validate_direction(v, n: int) -> tuple[int, ...]:
    v = tuple(v)
    if len(v) != n:
        raise DomainError("direction length differs from weight length")
    if any(not isinstance(x, int) or x < 0 for x in v):
        raise DomainError("direction must be a nonnegative integer vector")
    if max(v) == 0:
        raise DomainError("direction must be nonzero")
    return v


def _greedy_order(num, den, sense: Sense) -> list[int]:
    """Indices by num_i/den_i ratio: ascending for min, descending for max.

    Exact cross-multiplied comparison; ties resolve to the smaller index.
    """

    want_min = sense == "min"

    def compare(i: int, j: int) -> int:
        diff = num[i] * den[j] - num[j] * den[i]
        if diff != 0:
            return -1 if (diff < 0) == want_min else 1
        return -1 if i < j else 1

    return sorted(range(len(num)), key=cmp_to_key(compare))


def lp_extreme_eq(
    a: Sequence[int], v: Sequence[int], beta: int, sense: Sense
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact optimum of v.x over {a.x = beta, 0 <= x <= e} plus a vertex.

    Greedy fill by v_i/a_i ratio; the argument has at most one
    fractional coordinate. Raises RelaxationInfeasibleError when beta
    lies outside [0, ||a||_1].
    """
    a = _validate_weights(a)
    v = _validate_direction(v, len(a))
    _validate_sense(sense)
    total = sum(a)
    if beta < 0 or beta > total:
        raise RelaxationInfeasibleError(beta, total)
    x: list[Fraction] = [Fraction(0)] * len(a)
    value = Fraction(0)
    remaining = beta
    for i in _greedy_order(v, a, sense):
        if remaining == 0:
            break
        if remaining >= a[i]:
            x[i] = Fraction(1)
            remaining -= a[i]
            value += v[i]
        else:
            x[i] = Fraction(remaining, a[i])
            value += v[i] * x[i]
            remaining = 0
    return value, tuple(x)


def lp_extreme_ineq(
    a: Sequence[int], v: Sequence[int], level: int, sense: Sense
) -> Fraction:
    """max{a.x | v.x <= level} or min{a.x | v.x >= level} over the box.

    Exact fractional knapsack greedy with objective a and constraint v;
    coordinates with v_i = 0 are free (1 for max, 0 for min).
    """
    a = _validate_weights(a)
    v = _validate_direction(v, len(a))
    _validate_sense(sense)
    ve = sum(v)
    if sense == "max" and level < 0:
        raise DomainError("max side needs level >= 0")
    if sense == "min" and level > ve:
        raise DomainError("min side needs level <= ||v||_1")

    active = [i for i in range(len(a)) if v[i] > 0]
    value = Fraction(0)
    if sense == "max":
        value += sum(a[i] for i in range(len(a)) if v[i] == 0)
        budget = level
    else:
        budget = max(level, 0)
    # ratio here is a_i/v_i (objective per unit of constraint)
    order = _greedy_order([a[i] for i in active], [v[i] for i in active], sense)
    for pos in order:
        i = active[pos]
        if budget == 0:
            break
        if budget >= v[i]:
            budget -= v[i]
            value += a[i]
        else:
            value += Fraction(a[i] * budget, v[i])
            budget = 0
    return value


def _validate_sense(sense: str) -> None:
    if sense not in ("min", "max"):
        raise DomainError('sense must be "min" or "max"')


def certify(a: Sequence[int], v: Sequence[int], beta: int) -> CertifyResult:
    """Certificate for beta when no integer lies in [vmin, vmax].

    Out-of-range beta is trivially infeasible; otherwise either a
    Certificate (sound: the relaxation traps v.x strictly between
    consecutive integers) or no_certificate.
    """
    a = _validate_weights(a)
    v = _validate_direction(v, len(a))
    if math.gcd(*a) != 1:
        raise DomainError("weights not coprime")
    total = sum(a)
    if beta < 0 or beta > total:
        return CertifyResult(CertifyStatus.TRIVIALLY_INFEASIBLE, beta)
    vmin, arg_min = lp_extreme_eq(a, v, beta, "min")
    vmax, arg_max = lp_extreme_eq(a, v, beta, "max")
    if math.floor(vmax) < vmin:
        cert = Certificate(
            beta=beta,
            level=math.floor(vmin),
            vmin=vmin,
            vmax=vmax,
            arg_min=arg_min,
            arg_max=arg_max,
        )
        return CertifyResult(CertifyStatus.CERTIFIED, beta, cert)
    return CertifyResult(CertifyStatus.NO_CERTIFICATE, beta)


def verify_certificate(a: Sequence[int], v: Sequence[int], cert: Certificate) -> bool:
    """Independent check: max(a, level) < beta < min(a, level + 1).

    Recomputes both one-sided LPs and never consults the certificate's
    own vmin/vmax or witnesses; any malformed input yields False.
    """
    try:
        a = _validate_weights(a)
        v = _validate_direction(v, len(a))
        level = cert.level
        beta = cert.beta
        if not isinstance(level, int) or not isinstance(beta, int):
            return False
        if level < 0 or level + 1 > sum(v):
            return False
        return (
            lp_extreme_ineq(a, v, level, "max")
            < beta
            < lp_extreme_ineq(a, v, level + 1, "min")
        )
    except DomainError:
        return False


def witnesses_consistent(
    a: Sequence[int], v: Sequence[int], cert: Certificate
) -> bool:
    """Do the stored witnesses attain vmin/vmax and satisfy a.x = beta?"""
    try:
        a = _validate_weights(a)
        v = _validate_direction(v, len(a))
    except DomainError:
        return False
    for arg, target in ((cert.arg_min, cert.vmin), (cert.arg_max, cert.vmax)):
        if len(arg) != len(a):
            return False
        if any(x < 0 or x > 1 for x in arg):
            return False
        if sum(ai * xi for ai, xi in zip(a, arg)) != cert.beta:
            return False
        if sum(vi * xi for vi, xi in zip(v, arg)) != target:
            return False
    return True


def enumerate_intervals(
    a: Sequence[int],
    v: Sequence[int],
    scale: Fraction,
    residual: Sequence[Fraction],
    k_lo: int = 0,
    k_hi: int | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> IntervalCover:
    """Bad/good intervals for levels k_lo..k_hi, endpoints exact.

    Full enumeration is only possible when the level range fits the
    cap; ||v||_1 can be astronomically large, in which case callers
    must request a partial window.
    """
    a = _validate_weights(a)
    v = _validate_direction(v, len(a))
    ve = sum(v)
    if k_hi is None:
        k_hi = ve
    if not 0 <= k_lo <= k_hi <= ve:
        raise DomainError("need 0 <= k_lo <= k_hi <= ||v||_1")
    if k_hi - k_lo > cap:
        raise CapacityError(
            f"level range {k_hi - k_lo} exceeds the cap {cap}; "
            "enumerate a partial window [k_lo, k_hi] instead"
        )
    mins = [lp_extreme_ineq(a, v, k, "min") for k in range(k_lo, k_hi + 1)]
    maxs = [lp_extreme_ineq(a, v, k, "max") for k in range(k_lo, k_hi + 1)]
    for i in range(len(mins)):
        if mins[i] > maxs[i]:
            raise InvariantViolation("bad interval endpoints out of order")
        if i + 1 < len(mins) and not maxs[i] < mins[i + 1]:
            raise DomainError(
                "consecutive levels overlap; decomposition hypotheses violated"
            )
    bad = tuple((mins[i], maxs[i]) for i in range(len(mins)))
    good = tuple((maxs[i], mins[i + 1]) for i in range(len(mins) - 1))
    bound = scale - l1_norm(residual)
    min_len = min((hi - lo for lo, hi in good), default=None)
    return IntervalCover(
        k_lo=k_lo,
        k_hi=k_hi,
        bad=bad,
        good=good,
        min_good_length=min_len,
        good_length_bound=Fraction(bound),
        good_length_bound_holds=(min_len is None or min_len >= bound),
    )


def count_integers_in_bad(cover: IntervalCover) -> int:
    """Number of integers inside the closed bad intervals."""
    total = 0
    for lo, hi in cover.bad:
        count = math.floor(hi) - math.ceil(lo) + 1
        if count > 0:
            total += count
    return total


def _classify_chunk(args) -> tuple[int, int]:
    a, v, betas = args
    certified = 0
    for beta in betas:
        if certify(a, v, beta).status is CertifyStatus.CERTIFIED:
            certified += 1
    return certified, len(betas) - certified


def coverage_stats(
    a: Sequence[int],
    v: Sequence[int],
    scale: Fraction,
    residual: Sequence[Fraction],
    mode: str,
    sample_size: int | None = None,
    seed: int | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
    workers: int = 1,
) -> CoverageStats:
    """Exact or sampled share of uncertified right-hand sides.

    Exact mode enumerates every interval (capacity-gated); sampled mode
    draws beta uniformly from {0, ..., ||a||_1} with the given seed and
    classifies each via certify.
    """
    a = _validate_weights(a)
    v = _validate_direction(v, len(a))
    n = len(a)
    bound = 2 * (l1_norm(tuple(Fraction(r) for r in residual)) + 1) / Fraction(scale)
    two_pow = Fraction(1, 1 << n)
    if mode == "exact":
        cover = enumerate_intervals(a, v, scale, residual, cap=cap)
        total = sum(a) + 1
        b = count_integers_in_bad(cover)
        g = total - b
        frac = Fraction(b, total)
        if frac > bound:
            raise InvariantViolation("bad fraction exceeds its bound")
        return CoverageStats(
            mode=mode, g=g, b=b, bad_fraction=frac,
            bad_fraction_bound=bound, two_pow_n_bound=two_pow,
        )
    if mode != "sampled":
        raise DomainError('mode must be "exact" or "sampled"')
    if not sample_size or sample_size < 1:
        raise DomainError("sampled mode needs sample_size >= 1")
    if seed is None:
        raise DomainError("sampled mode needs a seed")
    rng = SplitMix64(seed)
    total = sum(a)
    betas = [rng.randint(0, total) for _ in range(sample_size)]
    certified, uncertified = _classify(a, v, betas, workers)
    return CoverageStats(
        mode=mode, g=certified, b=uncertified,
        bad_fraction=Fraction(uncertified, sample_size),
        bad_fraction_bound=bound, two_pow_n_bound=two_pow,
        sample_size=sample_size, seed=seed,
    )


def _classify(a, v, betas, workers: int) -> tuple[int, int]:
    if workers <= 1 or len(betas) < 2:
        return _classify_chunk((a, v, betas))
    size = -(-len(betas) // workers)
    chunks = [
        (a, v, betas[i : i + size]) for i in range(0, len(betas), size)
    ]
    certified = 0
    uncertified = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for good, bad in pool.map(_classify_chunk, chunks):
            certified += good
            uncertified += bad
    return certified, uncertified
