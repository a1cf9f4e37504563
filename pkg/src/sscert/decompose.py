"""Near-parallel direction computation: a = scale * v + residual.

Two routes produce the branching direction v:

* ``frank_tardos``: diophantine approximation of a / max(a) (the
  Frank-Tardos single-vector decomposition). Requires n >= 10 and
  max(a) >= 2^(2 n^2); the three guarantees (direction l1 norm at most
  2^(2 n^2), residual ratio at most 2^-(n+2), scale at least 2^(n+2))
  are checked exactly on every output.
* ``lll_rows``: reduce the columns of the matrix stacking a over the
  identity; v is the last row of the inverse transform, with scale and
  residual defined by orthogonal projection. The reduction may return
  a direction with mixed signs, which branching cannot use; callers
  that need a usable direction go through ``decompose_with_fallback``.
"""

from __future__ import annotations

import enum
import warnings as _warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .diophantine import ApproxResult, choose_precision, dioph_approx
from .errors import DomainError, InvariantViolation, MixedSignDirectionWarning
from .intmath import dot, kth_root_bracket, l1_norm, norm_sq
from .lll import Basis, ReductionStats, lll_reduce
from .model import Instance


class Method(enum.Enum):
    FRANK_TARDOS = "frank_tardos"
    LLL_ROWS = "lll_rows"


@dataclass(frozen=True, slots=True)
class BoundCheck:
    """One exact inequality check: ``lhs relation rhs``."""

    name: str
    holds: bool
    lhs: Fraction
    rhs: Fraction
    relation: str  # "<=" or ">="
    note: str = ""


@dataclass(frozen=True, slots=True)
class Decomposition:
    """Direction v with exact scale and residual, a = scale * v + residual."""

    v: tuple[int, ...]
    scale: Fraction
    residual: tuple[Fraction, ...]
    method: Method
    provenance: Union[ApproxResult, ReductionStats]
    bounds: tuple[BoundCheck, ...]
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "residual", tuple(self.residual))
        if len(self.v) != len(self.residual):
            raise DomainError("direction and residual lengths differ")
        if all(x == 0 for x in self.v):
            raise DomainError("direction must be nonzero")
        if self.scale <= 0:
            raise DomainError("scale must be positive")
        if l1_norm(self.residual) >= self.scale:
            raise DomainError("residual l1 norm must be below the scale")

    @property
    def n(self) -> int:
        return len(self.v)

    def reconstruct_a(self) -> tuple[Fraction, ...]:
        return tuple(self.scale * vi + ri for vi, ri in zip(self.v, self.residual))

    def nonnegative(self) -> bool:
        return min(self.v) >= 0


@dataclass(frozen=True, slots=True)
class ParallelismReport:
    """sin^2 of the angle (a, v) next to the residual/scale bound."""

    sin_sq: Fraction
    ratio_sq: Fraction | None
    f_a_bracket: tuple[Fraction, Fraction]

    def __post_init__(self):
        if self.ratio_sq is not None and self.sin_sq > self.ratio_sq:
            raise InvariantViolation("sin^2 exceeds its residual ratio bound")


def project_onto(a: Sequence, v: Sequence) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Orthogonal projection scale and residual: r = a - scale * v, r.v = 0."""
    if len(a) != len(v):
        raise DomainError("vector lengths differ")
    vv = dot(v, v)
    if vv == 0:
        raise DomainError("cannot project onto the zero vector")
    lam = Fraction(dot(a, v)) / Fraction(vv)
    residual = tuple(Fraction(ai) - lam * vi for ai, vi in zip(a, v))
    return lam, residual


def _build(a, v, scale, method, provenance, bounds, warnings=()):
    residual = tuple(Fraction(ai) - scale * vi for ai, vi in zip(a, v))
    warnings = tuple(warnings)
    if min(v) < 0:
        if method is not Method.LLL_ROWS:
            raise InvariantViolation("direction has negative components")
        warnings += (
            "direction has negative components; branching requires a "
            "nonnegative direction",
        )
    return Decomposition(
        v=tuple(v),
        scale=scale,
        residual=residual,
        method=method,
        provenance=provenance,
        bounds=tuple(bounds),
        warnings=warnings,
    )


def decompose_frank_tardos(inst: Instance) -> Decomposition:
    """Direction from diophantine approximation of a / max(a)."""
    n = inst.n
    if n < 10:
        raise DomainError("frank_tardos decomposition requires n >= 10")
    ainf = inst.linf_norm
    if ainf < 1 << (2 * n * n):
        raise DomainError(
            "instance density above 1/(2n): max weight below 2^(2 n^2)"
        )
    precision = choose_precision(n)
    alpha = tuple(Fraction(ai, ainf) for ai in inst.a)
    approx = dioph_approx(alpha, precision)
    if min(approx.v) < 0 or max(approx.v) == 0:
        raise InvariantViolation("approximant of a positive vector must be >= 0, != 0")
    scale = Fraction(ainf, approx.q)
    residual = tuple(Fraction(ai) - scale * vi for ai, vi in zip(inst.a, approx.v))
    bounds = (
        _check(
            "direction_l1",
            Fraction(l1_norm(approx.v)),
            Fraction(1 << (2 * n * n)),
            "<=",
        ),
        _check(
            "residual_ratio",
            l1_norm(residual) / scale,
            Fraction(1, 1 << (n + 2)),
            "<=",
        ),
        _check("scale_lower", scale, Fraction(1 << (n + 2)), ">="),
    )
    if not all(b.holds for b in bounds):
        raise InvariantViolation("decomposition bound failed; kernel bug")
    return _build(inst.a, approx.v, scale, Method.FRANK_TARDOS, approx, bounds)


def _check(name, lhs, rhs, relation, note=""):
    holds = lhs <= rhs if relation == "<=" else lhs >= rhs
    return BoundCheck(
        name=name, holds=holds, lhs=Fraction(lhs), rhs=Fraction(rhs),
        relation=relation, note=note,
    )


def decompose_lll_rows(inst: Instance) -> Decomposition:
    """Direction from reducing the columns of a stacked over the identity."""
    n = inst.n
    if n < 2:
        raise DomainError("reduction decomposition requires n >= 2")
    if inst.linf_norm ** 2 < 1 << (n * (n + 2)):
        raise DomainError(
            "instance density above 1/(n/2 + 1): max weight too small"
        )
    cols = tuple(
        tuple(
            Fraction(inst.a[j]) if t == 0 else Fraction(1 if t == j + 1 else 0)
            for t in range(n + 1)
        )
        for j in range(n)
    )
    reduced = lll_reduce(Basis(cols=cols))
    v = reduced.U_inv[n - 1]
    if sum(v) < 0:
        v = tuple(-x for x in v)
    if all(x == 0 for x in v):
        raise InvariantViolation("last row of a unimodular inverse is zero")
    scale, residual = project_onto(inst.a, v)
    if scale <= 0:
        raise DomainError("projection scale not positive; direction unusable")
    bounds = _reduction_bounds(inst.a, v, scale, residual)
    return _build(inst.a, v, scale, Method.LLL_ROWS, reduced.stats, bounds)


def _reduction_bounds(a, v, scale, residual):
    """The three reduction guarantees, exponents cleared to integers.

    With f = 2^(n/4) / ||a||^(1/n), comparisons against f are done
    after raising both sides to the 4n-th power, so that only
    ||a||^2 (an integer) appears.
    """
    n = len(a)
    asq = norm_sq(a)
    vsq = norm_sq(v)
    rsq = norm_sq(residual)
    note = "both sides raised to the 4n-th power"
    lhs1 = (Fraction(vsq) * (1 + rsq)) ** (2 * n)
    rhs1 = Fraction((1 << (n * n)) * asq ** (2 * n - 2))
    lhs2 = scale ** (4 * n) * (1 << (n * n))
    rhs2 = Fraction(asq * asq)
    lhs3 = (rsq / scale**2) ** (2 * n) * (asq * asq)
    rhs3 = Fraction(1 << (4 * n + n * n))
    return (
        _check("direction_residual_norm", lhs1, rhs1, "<=", note),
        _check("scale_lower", lhs2, rhs2, ">=", note),
        _check("residual_ratio", lhs3, rhs3, "<=", note),
    )


def decompose_with_fallback(
    inst: Instance, method: Method = Method.FRANK_TARDOS
) -> Decomposition:
    """Dispatch on method; fall back from an unusable reduced direction.

    When lll_rows yields a mixed-sign direction (or none at all) a
    MixedSignDirectionWarning is issued and frank_tardos is used if its
    preconditions hold; otherwise the mixed-sign result is returned for
    inspection (or the reduction error re-raised).
    """
    if method is Method.FRANK_TARDOS:
        return decompose_frank_tardos(inst)
    try:
        dec = decompose_lll_rows(inst)
    except DomainError as exc:
        if _frank_tardos_applies(inst):
            _warn_mixed(str(exc))
            return decompose_frank_tardos(inst)
        raise
    if dec.nonnegative():
        return dec
    _warn_mixed("reduced direction has mixed signs")
    if _frank_tardos_applies(inst):
        return decompose_frank_tardos(inst)
    return dec


def _frank_tardos_applies(inst: Instance) -> bool:
    return inst.n >= 10 and inst.linf_norm >= 1 << (2 * inst.n * inst.n)


def _warn_mixed(detail: str) -> None:
    _warnings.warn(
        f"{detail}; falling back where possible", MixedSignDirectionWarning,
        stacklevel=3,
    )


def parallelism(a: Sequence, v: Sequence) -> ParallelismReport:
    """Exact sin^2(a, v) alongside the (residual/scale)^2 bound."""
    if all(x == 0 for x in a):
        raise DomainError("a must be nonzero")
    lam, residual = project_onto(a, v)
    asq = Fraction(norm_sq(a))
    rsq = Fraction(norm_sq(residual))
    ratio = rsq / lam**2 if lam != 0 else None
    n = len(a)
    f_bracket = kth_root_bracket(Fraction(1 << (n * n)) / asq**2, 4 * n)
    return ParallelismReport(sin_sq=rsq / asq, ratio_sq=ratio, f_a_bracket=f_bracket)
