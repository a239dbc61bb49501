"""Tristram-Levine signatures, the xi invariant, ribbon verdicts."""

from fractions import Fraction

import pytest

from dihedral import (
    NonSquareFreeError,
    RIBBON_CONSISTENT,
    RIBBON_OBSTRUCTED,
    SeifertMatrix,
    SigmaWBound,
    SignatureIndeterminateError,
    connected_sum,
    cover_signature,
    ribbon_test,
    tristram_levine,
    twist_knot,
    twist_xi3,
    xi_n,
)
from dihedral.seifert import SurfaceClass

TREFOIL = twist_knot(-1)


class TestTristramLevine:
    def test_trefoil_at_minus_one(self):
        assert tristram_levine(TREFOIL, (1, 2)) == -2

    def test_granny_additivity(self):
        granny = connected_sum(TREFOIL, TREFOIL)
        assert tristram_levine(granny, (1, 2)) == -4

    def test_unknot(self):
        assert tristram_levine(SeifertMatrix([]), (1, 2)) == 0

    def test_figure_eight(self):
        assert tristram_levine(twist_knot(1), (1, 2)) == 0

    def test_additive_on_corpus(self, corpus):
        for v1, v2 in zip(corpus[:6], corpus[6:12]):
            s = connected_sum(v1, v2)
            lhs = tristram_levine(s, (1, 2))
            assert lhs == tristram_levine(v1, (1, 2)) + tristram_levine(v2, (1, 2))

    def test_precision_agreement(self, corpus):
        for v in corpus[:10]:
            a = tristram_levine(v, (1, 2), precision_bits=128)
            b = tristram_levine(v, (1, 2), precision_bits=256)
            assert a == b

    def test_parity(self, corpus):
        # nonsingular Hermitian matrix of even size: signature is even
        for v in corpus[:10]:
            assert tristram_levine(v, (1, 2)) % 2 == 0

    def test_indeterminate_at_alexander_root(self):
        # the trefoil's Alexander polynomial vanishes at primitive sixth
        # roots of unity, so the form degenerates there
        with pytest.raises(SignatureIndeterminateError):
            tristram_levine(TREFOIL, (1, 6))

    def test_omega_validation(self):
        with pytest.raises(ValueError):
            tristram_levine(TREFOIL, (0, 3))
        with pytest.raises(ValueError):
            tristram_levine(TREFOIL, (3, 3))
        with pytest.raises(TypeError):
            tristram_levine(TREFOIL, (1.0, 3))


class TestXi:
    def test_twist_formula(self):
        # family value: (4/9)(2m - 4) plus a sign from the cover term
        for m in (-7, -4, -1, 2, 5, 8, 11):
            val = twist_xi3(m)
            base = Fraction(4, 9) * (2 * m - 4)
            assert val.candidates == (base - 1, base + 1)
            assert val.linking_term == base
            assert val.signature_sum == 0
            assert not val.is_exact

    def test_twist_rejects_other_residues(self):
        with pytest.raises(ValueError):
            twist_xi3(0)
        with pytest.raises(ValueError):
            twist_xi3(3)

    def test_integrality_when_extending(self):
        for m in (2, 11, -7, 20):
            assert m % 9 == 2
            for c in twist_xi3(m).candidates:
                assert c.denominator == 1

    def test_exact_sigma(self):
        v = twist_knot(2)
        val = xi_n(v, SurfaceClass((-1, 1)), SeifertMatrix([]), 3, 1)
        assert val.is_exact
        assert val.candidates == (Fraction(1),)

    def test_signature_sum_term(self):
        # a trefoil characteristic knot contributes its two signatures
        v = connected_sum(TREFOIL, TREFOIL)
        beta = SurfaceClass((1, 2, 0, 0))
        from dihedral import is_characteristic_class

        assert is_characteristic_class(v, beta.coords, 3)
        val = xi_n(v, beta, TREFOIL, 3, SigmaWBound(0))
        want = tristram_levine(TREFOIL, (1, 3)) + tristram_levine(TREFOIL, (2, 3))
        assert val.signature_sum == want

    def test_rejects_non_characteristic(self):
        with pytest.raises(ValueError):
            xi_n(twist_knot(2), SurfaceClass((1, 1)), SeifertMatrix([]), 3, 0)


class TestRibbon:
    def test_twist_verdicts(self):
        assert ribbon_test(twist_xi3(2), 0, 3) == RIBBON_CONSISTENT
        assert ribbon_test(twist_xi3(11), 0, 3) == RIBBON_OBSTRUCTED
        assert ribbon_test(twist_xi3(-1), 0, 3) == RIBBON_OBSTRUCTED

    def test_bound_scales_with_rank(self):
        val = twist_xi3(11)
        # candidates 7 and 9; bound (2 r + 2) / 2 = r + 1
        assert ribbon_test(val, 5, 3) == RIBBON_OBSTRUCTED
        assert ribbon_test(val, 6, 3) == RIBBON_CONSISTENT

    def test_square_free_required(self):
        val = twist_xi3(2)
        with pytest.raises(NonSquareFreeError):
            ribbon_test(val, 0, 9)

    def test_obstruction_needs_all_candidates_out(self):
        # one candidate inside the bound keeps the knot ribbon-possible
        val = twist_xi3(2)  # candidates -1, 1
        assert ribbon_test(val, 0, 3) == RIBBON_CONSISTENT


class TestCoverSignature:
    def test_arithmetic(self):
        got = cover_signature(-2, 4, (Fraction(1), Fraction(-1)), 3)
        assert got == Fraction(3 * -2) - Fraction(2 * 4, 4) - 0

    def test_even_euler_required(self):
        with pytest.raises(ValueError):
            cover_signature(0, 3, (), 3)
