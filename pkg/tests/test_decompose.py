import math
import random
from fractions import Fraction

import pytest

from sscert.decompose import (
    Decomposition,
    Method,
    decompose_frank_tardos,
    decompose_lll_rows,
    decompose_with_fallback,
    parallelism,
    project_onto,
)
from sscert.errors import DomainError, MixedSignDirectionWarning
from sscert.intmath import l1_norm
from sscert.model import Instance, generate_instance


def remark_family(m):
    # a = (m^2, m^2 + 1) projected onto v = (m, m + 1)
    return (m * m, m * m + 1), (m, m + 1)


class TestProjectOnto:
    def test_parallel(self):
        lam, res = project_onto((2, 4), (1, 2))
        assert lam == 2
        assert res == (Fraction(0), Fraction(0))

    def test_remark_member(self):
        a, v = remark_family(100)
        lam, res = project_onto(a, v)
        assert lam == Fraction(2010101, 20201)
        assert res[0] / lam == Fraction(999900, 2010101)
        assert res[1] / lam == Fraction(-990000, 2010101)

    def test_orthogonality(self):
        rnd = random.Random(31)
        for _ in range(50):
            n = rnd.randint(1, 6)
            a = tuple(rnd.randint(-40, 40) for _ in range(n))
            v = tuple(rnd.randint(-9, 9) for _ in range(n))
            if all(x == 0 for x in v):
                continue
            lam, res = project_onto(a, v)
            assert sum(r * x for r, x in zip(res, v)) == 0
            assert all(Fraction(x) == lam * y + r for x, y, r in zip(a, v, res))

    def test_zero_direction(self):
        with pytest.raises(DomainError):
            project_onto((1, 2), (0, 0))


class TestFrankTardos:
    def test_pipeline_instance(self):
        inst = generate_instance(10, 42)
        dec = decompose_frank_tardos(inst)
        assert dec.method is Method.FRANK_TARDOS
        assert all(b.holds for b in dec.bounds)
        assert min(dec.v) >= 0 and max(dec.v) > 0
        # defining identity, coordinate by coordinate
        assert dec.reconstruct_a() == tuple(Fraction(x) for x in inst.a)
        # hypotheses for the interval machinery
        assert dec.scale >= 1
        assert l1_norm(dec.residual) / dec.scale < 1
        # exact bound values
        n = inst.n
        assert l1_norm(dec.v) <= 1 << (2 * n * n)
        assert l1_norm(dec.residual) / dec.scale <= Fraction(1, 1 << (n + 2))
        assert dec.scale >= 1 << (n + 2)

    @pytest.mark.parametrize("n", [13, 14])
    def test_bounds_up_to_n14(self, n):
        dec = decompose_frank_tardos(generate_instance(n, 0))
        assert all(b.holds for b in dec.bounds)

    def test_density_gate(self):
        base = generate_instance(10, 7)
        capped = tuple(min(x, (1 << 200) - 1) for x in base.a)
        if math.gcd(*capped) != 1:
            capped = capped[:-1] + (capped[-1] + 1,)
        inst = Instance(n=10, a=capped)
        with pytest.raises(DomainError):
            decompose_frank_tardos(inst)

    def test_small_n_gate(self):
        inst = Instance(n=2, a=(1 << 300, (1 << 300) + 1))
        with pytest.raises(DomainError):
            decompose_frank_tardos(inst)


class TestLllRows:
    def test_near_multiple_toy(self):
        # a close to 2^12 * (1, 2, 3, 4), coprime by the +1 offsets
        n = 4
        scale0 = 1 << 12
        a = (scale0 + 1, 2 * scale0, 3 * scale0, 4 * scale0 + 1)
        inst = Instance(n=n, a=a)
        dec = decompose_lll_rows(inst)
        assert dec.method is Method.LLL_ROWS
        assert dec.reconstruct_a() == tuple(Fraction(x) for x in a)
        residual_dot_v = sum(r * x for r, x in zip(dec.residual, dec.v))
        assert residual_dot_v == 0
        by_name = {b.name: b for b in dec.bounds}
        assert by_name["residual_ratio"].holds

    def test_generated_instance_scale_bound(self):
        inst = generate_instance(12, 3)
        dec = decompose_lll_rows(inst)
        by_name = {b.name: b for b in dec.bounds}
        assert by_name["scale_lower"].holds
        assert by_name["direction_residual_norm"].holds
        assert l1_norm(dec.residual) / dec.scale < 1

    def test_density_gate(self):
        with pytest.raises(DomainError):
            decompose_lll_rows(Instance(n=3, a=(2, 3, 5)))


class TestFallback:
    def test_frank_tardos_passthrough(self):
        inst = generate_instance(10, 42)
        assert decompose_with_fallback(inst) == decompose_frank_tardos(inst)

    def test_mixed_sign_falls_back(self, monkeypatch, mixed_sign_warnings):
        inst = generate_instance(10, 42)
        mixed = Decomposition(
            v=(1, -1) + (1,) * 8,
            scale=Fraction(3),
            residual=(Fraction(0),) * 10,
            method=Method.LLL_ROWS,
            provenance=decompose_frank_tardos(inst).provenance,
            bounds=(),
        )
        monkeypatch.setattr(
            "sscert.decompose.decompose_lll_rows", lambda _: mixed
        )
        dec = decompose_with_fallback(inst, Method.LLL_ROWS)
        assert dec.method is Method.FRANK_TARDOS
        assert any(
            issubclass(w.category, MixedSignDirectionWarning)
            for w in mixed_sign_warnings
        )

    def test_mixed_sign_returned_when_no_fallback(self, monkeypatch, mixed_sign_warnings):
        inst = Instance(n=4, a=(4097, 8192, 12288, 16385))
        mixed = Decomposition(
            v=(1, -1, 1, 1),
            scale=Fraction(3),
            residual=(Fraction(0),) * 4,
            method=Method.LLL_ROWS,
            provenance=None,
            bounds=(),
        )
        monkeypatch.setattr(
            "sscert.decompose.decompose_lll_rows", lambda _: mixed
        )
        dec = decompose_with_fallback(inst, Method.LLL_ROWS)
        assert dec is mixed
        assert mixed_sign_warnings


class TestDecompositionInvariants:
    def test_mixed_sign_warning_recorded_for_reduction(self):
        dec = Decomposition(
            v=(1, -1),
            scale=Fraction(5),
            residual=(Fraction(1), Fraction(1)),
            method=Method.LLL_ROWS,
            provenance=None,
            bounds=(),
        )
        assert dec.warnings == ()
        assert not dec.nonnegative()

    def test_residual_dominating_scale_rejected(self):
        with pytest.raises(DomainError):
            Decomposition(
                v=(1, 1),
                scale=Fraction(1),
                residual=(Fraction(1), Fraction(1)),
                method=Method.FRANK_TARDOS,
                provenance=None,
                bounds=(),
            )

    def test_zero_direction_rejected(self):
        with pytest.raises(DomainError):
            Decomposition(
                v=(0, 0),
                scale=Fraction(1),
                residual=(Fraction(0), Fraction(0)),
                method=Method.FRANK_TARDOS,
                provenance=None,
                bounds=(),
            )


class TestParallelism:
    def test_remark_member_values(self):
        a, v = remark_family(100)
        report = parallelism(a, v)
        assert report.ratio_sq == Fraction(1979900010000, 2010101**2)
        assert report.sin_sq == Fraction(1979900010000, 20201**2 * 200020001)
        assert 0.48 < float(report.ratio_sq) < 0.50
        assert float(report.sin_sq) < 3e-5

    def test_parallel_and_perpendicular(self):
        assert parallelism((2, 4), (1, 2)).sin_sq == 0
        report = parallelism((1, 0), (0, 1))
        assert report.sin_sq == 1
        assert report.ratio_sq is None

    def test_remark_ratio_monotone_toward_half(self):
        ratios = []
        for m in (10, 100, 1000):
            a, v = remark_family(m)
            lam, res = project_onto(a, v)
            ratios.append((res[0] / lam, res[1] / lam))
        firsts = [r[0] for r in ratios]
        seconds = [r[1] for r in ratios]
        assert firsts[0] < firsts[1] < firsts[2] < Fraction(1, 2)
        assert Fraction(-1, 2) < seconds[2] < seconds[1] < seconds[0]

    def test_f_bracket(self):
        a, v = remark_family(10)
        report = parallelism(a, v)
        lo, hi = report.f_a_bracket
        n = len(a)
        # f(a)^(4n) = 2^(n^2) / ||a||^4
        asq = sum(x * x for x in a)
        target = Fraction(1 << (n * n), asq * asq)
        assert lo ** (4 * n) <= target <= hi ** (4 * n)
