"""Exact rational LLL reduction with unimodular transform tracking.

The reduction itself runs in an integer kernel (compiled Cython module
when built, pure Python otherwise; override with SSCERT_KERNEL=python
or =cython). Rational bases are scaled by a common denominator first,
which leaves the reduction decisions and the transform U unchanged.

Column convention throughout: the lattice is the set of integer
combinations of the basis columns, and ``reduced = input . U``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, RankError
from .intmath import dot

_kernel_choice = os.environ.get("SSCERT_KERNEL", "")
if _kernel_choice == "python":
    from . import _lll_py as _kernel
elif _kernel_choice == "cython":
    from . import _lll_cy as _kernel  # type: ignore[no-redef]
else:
    try:
        from . import _lll_cy as _kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _lll_py as _kernel  # type: ignore[no-redef]

if os.environ.get("SSCERT_BACKEND", "") == "int":
    _num = int
else:
    try:
        from gmpy2 import mpz as _num  # type: ignore[import-not-found]
    except ImportError:
        _num = int


def kernel_name() -> str:
    """Name of the active reduction kernel ("python" or "cython")."""
    return _kernel.KERNEL_NAME


DEFAULT_DELTA = Fraction(3, 4)


@dataclass(frozen=True, slots=True)
class Basis:
    """Linearly independent columns of exact rationals."""

    cols: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        cols = tuple(tuple(Fraction(x) for x in col) for col in self.cols)
        object.__setattr__(self, "cols", cols)
        if not cols:
            raise DomainError("basis needs at least one column")
        m = len(cols[0])
        if any(len(col) != m for col in cols):
            raise DomainError("basis columns must have equal length")
        if len(cols) > m:
            raise RankError("more columns than coordinates")

    @property
    def dim(self) -> int:
        return len(self.cols)

    @property
    def ambient_dim(self) -> int:
        return len(self.cols[0])


@dataclass(frozen=True, slots=True)
class GramSchmidt:
    """mu coefficients (mu[i][j] for j < i) and squared b*_i norms."""

    mu: tuple[tuple[Fraction, ...], ...]
    norms_sq: tuple[Fraction, ...]


@dataclass(frozen=True, slots=True)
class ReductionStats:
    dim: int
    swaps: int
    size_reductions: int


@dataclass(frozen=True, slots=True)
class ReducedBasis:
    """LLL output: reduced columns, transform, inverse, Gram data."""

    basis: Basis
    U: tuple[tuple[int, ...], ...]
    U_inv: tuple[tuple[int, ...], ...]
    gso: GramSchmidt
    delta: Fraction
    stats: ReductionStats

    def __post_init__(self):
        d = self.basis.dim
        ident = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
        prod = [
            [sum(self.U[i][t] * self.U_inv[t][j] for t in range(d)) for j in range(d)]
            for i in range(d)
        ]
        if prod != ident:
            raise DomainError("transform and inverse do not multiply to identity")
        _check_reduced_conditions(self.gso, self.delta)

    @property
    def first_vector(self) -> tuple[Fraction, ...]:
        return self.basis.cols[0]


def _check_reduced_conditions(gso: GramSchmidt, delta: Fraction) -> None:
    half = Fraction(1, 2)
    for row in gso.mu:
        for mu in row:
            if abs(mu) > half:
                raise DomainError("basis is not size-reduced")
    norms = gso.norms_sq
    for i in range(1, len(norms)):
        mu = gso.mu[i][i - 1]
        if norms[i] < (delta - mu * mu) * norms[i - 1]:
            raise DomainError("Lovasz condition fails")


def gram_schmidt(basis: Basis) -> GramSchmidt:
    """Exact rational Gram-Schmidt data of the columns."""
    ortho: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu_rows: list[tuple[Fraction, ...]] = []
    for i, col in enumerate(basis.cols):
        vec = list(col)
        row = []
        for j in range(i):
            coeff = dot(col, ortho[j]) / norms[j]
            row.append(coeff)
            for t in range(len(vec)):
                vec[t] -= coeff * ortho[j][t]
        nsq = dot(vec, vec)
        if nsq == 0:
            raise RankError("columns are linearly dependent")
        ortho.append(vec)
        norms.append(nsq)
        mu_rows.append(tuple(row))
    return GramSchmidt(mu=tuple(mu_rows), norms_sq=tuple(norms))


def is_reduced(basis: Basis, delta: Fraction = DEFAULT_DELTA) -> bool:
    """Exact size-reduction and Lovasz check; RankError on dependence."""
    _validate_delta(delta)
    try:
        _check_reduced_conditions(gram_schmidt(basis), delta)
    except DomainError:
        return False
    return True


def _validate_delta(delta: Fraction) -> None:
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise DomainError("delta must lie strictly between 1/4 and 1")


def _common_denominator(basis: Basis) -> int:
    return math.lcm(*(x.denominator for col in basis.cols for x in col))


def lll_reduce(basis: Basis, delta: Fraction = DEFAULT_DELTA) -> ReducedBasis:
    """LLL-reduce the basis columns, tracking U and U^-1 incrementally."""
    _validate_delta(delta)
    delta = Fraction(delta)
    scale = _common_denominator(basis)
    int_cols = [
        [_num(x.numerator * (scale // x.denominator)) for x in col]
        for col in basis.cols
    ]
    try:
        b, u, uinv, lam, dvec, swaps, reductions = _kernel.lll_reduce_ints(
            int_cols, _num(delta.numerator), _num(delta.denominator)
        )
    except ValueError as exc:
        raise RankError(str(exc)) from None

    d = basis.dim
    reduced = Basis(
        cols=tuple(tuple(Fraction(int(x), scale) for x in col) for col in b)
    )
    u_rows = tuple(tuple(int(u[j][i]) for j in range(d)) for i in range(d))
    uinv_rows = tuple(tuple(int(x) for x in row) for row in uinv)
    scale_sq = scale * scale
    gso = GramSchmidt(
        mu=tuple(
            tuple(Fraction(int(lam[i][j]), int(dvec[j + 1])) for j in range(i))
            for i in range(d)
        ),
        norms_sq=tuple(
            Fraction(int(dvec[i + 1]), int(dvec[i])) / scale_sq for i in range(d)
        ),
    )
    _verify_transform(basis, reduced, u_rows)
    return ReducedBasis(
        basis=reduced,
        U=u_rows,
        U_inv=uinv_rows,
        gso=gso,
        delta=delta,
        stats=ReductionStats(dim=d, swaps=swaps, size_reductions=reductions),
    )


def _verify_transform(original: Basis, reduced: Basis, u_rows) -> None:
    d = original.dim
    for j in range(d):
        for t in range(original.ambient_dim):
            acc = sum(original.cols[i][t] * u_rows[i][j] for i in range(d))
            if acc != reduced.cols[j][t]:
                raise DomainError("reduced basis is not input times U")


def basis_from_ints(cols: Sequence[Sequence[int]]) -> Basis:
    """Convenience constructor from integer columns."""
    return Basis(cols=tuple(tuple(Fraction(x) for x in col) for col in cols))
