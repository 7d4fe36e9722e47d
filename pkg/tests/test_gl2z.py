import random
from fractions import Fraction

import pytest

from toralrev import gl2z
from toralrev.errors import NotHyperbolic, NotInvolution
from toralrev.exactmath import IDENTITY, MINUS_IDENTITY, UniMat
from toralrev.gl2z import J, SWAP, CentralizerKind, InvolutionRep, Kind
from toralrev.oracle import brute_conjugator_search, brute_pell_units, brute_reverser_search, enumerate_unimodular

GRID3 = list(enumerate_unimodular(3))
CAT = UniMat(2, 1, 1, 1)


class TestClassify:
    def test_examples(self):
        c = gl2z.classify(CAT)
        assert (c.kind, c.det, c.trace, c.has_eigenvalue_one) == (Kind.HYPERBOLIC, 1, 3, False)
        c = gl2z.classify(UniMat(1, 1, 0, 1))
        assert c.kind is Kind.PARABOLIC and c.has_eigenvalue_one
        c = gl2z.classify(UniMat(0, -1, 1, 0))
        assert c.kind is Kind.ELLIPTIC and c.finite_order == 4

    def test_trichotomy_and_orders(self):
        for a in GRID3:
            c = gl2z.classify(a)
            t2, d4 = a.trace ** 2, 4 * a.det
            assert (c.kind is Kind.ELLIPTIC) == (0 <= t2 < d4)
            assert (c.kind is Kind.PARABOLIC) == (t2 == d4)
            assert c.has_eigenvalue_one == (a.minus_identity().det == 0)
            finite = c.kind is Kind.ELLIPTIC or a.is_scalar() or gl2z.is_involution(a)
            assert (c.finite_order is not None) == finite
            if c.finite_order:
                assert 12 % c.finite_order == 0 and (a ** c.finite_order).is_identity()


class TestInvolutions:
    def test_examples(self):
        ic = gl2z.involution_class(MINUS_IDENTITY)
        assert ic.representative is InvolutionRep.MINUS_IDENTITY and ic.conjugator == IDENTITY
        a = UniMat(1, 0, -1, -1)
        ic = gl2z.involution_class(a)
        assert ic.representative is InvolutionRep.SWAP and ic.conjugator.conj(SWAP) == a
        ic = gl2z.involution_class(J)
        assert ic.representative is InvolutionRep.DIAG_ONE_MINUS_ONE and ic.conjugator.conj(J) == J

    def test_rejects_non_involutions(self):
        for a in (IDENTITY, CAT, UniMat(0, -1, 1, 0)):
            with pytest.raises(NotInvolution):
                gl2z.involution_class(a)

    def test_classes_against_oracle(self):
        for a in enumerate_unimodular(5):
            if not gl2z.is_involution(a):
                continue
            ic = gl2z.involution_class(a)
            assert ic.conjugator.conj(ic.representative.matrix) == a
            for rep in InvolutionRep:
                hit = brute_conjugator_search(rep.matrix, a, 6)
                if hit is not None:
                    assert rep is ic.representative


class TestConjugacy:
    def test_examples(self):
        a, b = UniMat(1, 5, 0, 1), UniMat(1, -5, 0, 1)
        c = gl2z.conjugacy_test(a, b)
        assert c is not None and c.conj(a) == b
        c = gl2z.conjugacy_test(CAT, CAT.inverse())
        assert c is not None and c.conj(CAT) == CAT.inverse()
        assert gl2z.conjugacy_test(UniMat(1, 1, 0, 1), UniMat(1, 2, 0, 1)) is None

    def test_agrees_with_oracle_small(self):
        mats = list(enumerate_unimodular(2))
        for a in mats:
            for b in mats:
                if (a.trace, a.det) != (b.trace, b.det):
                    assert gl2z.conjugacy_test(a, b) is None
                    continue
                c = gl2z.conjugacy_test(a, b)
                brute = brute_conjugator_search(a, b, 12)
                assert (c is not None) == (brute is not None), (a, b)
                if c is not None:
                    assert c.conj(a) == b

    def test_equivalence_relation_properties(self):
        rng = random.Random(4)
        cs = list(enumerate_unimodular(4))
        for _ in range(50):
            a, b = rng.choice(GRID3), rng.choice(GRID3)
            c = rng.choice(cs)
            assert gl2z.conjugacy_test(a, a) is not None
            base = gl2z.conjugacy_test(a, b)
            back = gl2z.conjugacy_test(b, a)
            assert (base is None) == (back is None)
            assert (gl2z.conjugacy_test(c.conj(a), b) is None) == (base is None)

    def test_large_hyperbolic_conjugates(self):
        rng = random.Random(5)
        cs = list(enumerate_unimodular(4))
        for a in [UniMat(5, 2, 2, 1), UniMat(7, 4, 5, 3), UniMat(3, 5, 1, 2), UniMat(4, 7, 1, 2)]:
            for _ in range(10):
                c = rng.choice(cs) @ rng.choice(cs)
                b = c.conj(a)
                w = gl2z.conjugacy_test(a, b)
                assert w is not None and w.conj(a) == b


class TestCentralizer:
    def test_examples(self):
        z = gl2z.centralizer(CAT)
        assert z.kind is CentralizerKind.HYPERBOLIC_FAMILY
        assert UniMat(1, 1, 1, 0) in set(z.sample(3))
        z = gl2z.centralizer(UniMat(1, 1, 0, 1))
        assert z.kind is CentralizerKind.PARABOLIC_FAMILY
        assert set(z.sample(3)) == {UniMat(s, s * k, 0, s) for s in (1, -1) for k in range(-3, 4)}
        z = gl2z.centralizer(J)
        assert z.kind is CentralizerKind.FINITE_LIST
        assert set(z.generators) == {UniMat(1, 0, 0, 1), UniMat(-1, 0, 0, -1), UniMat(1, 0, 0, -1), UniMat(-1, 0, 0, 1)}

    def test_against_oracle(self):
        for a in GRID3:
            z = gl2z.centralizer(a)
            for g in z.generators:
                assert g @ a == a @ g
            if z.kind is CentralizerKind.FULL_GROUP:
                continue
            brute = set(brute_pell_units(a, 12))
            sample = set(z.sample(6))
            if z.kind is CentralizerKind.FINITE_LIST:
                assert sample == brute
            else:
                # every small centralizer element is generated
                assert brute <= set(z.sample(12)), a


class TestReversibility:
    def test_examples(self):
        assert not gl2z.reversibility(UniMat(1, 1, 1, 0)).reversible
        rep = gl2z.reversibility(UniMat(0, -1, 1, 0))
        assert rep.reversible and rep.reverser == J
        assert gl2z.reversibility(CAT).reversible
        rep = gl2z.strong_reversibility(CAT)
        t = rep.involutive_reverser
        assert t == UniMat(1, 0, -1, -1) and (t @ t).is_identity() and t @ CAT @ t == CAT.inverse()
        rep = gl2z.strong_reversibility(UniMat(1, 7, 0, 1))
        assert rep.strongly_reversible and rep.involutive_reverser == J
        assert not gl2z.strong_reversibility(UniMat(1, 1, 1, 0)).strongly_reversible

    def test_exhaustive_grid(self):
        for a in GRID3:
            rep = gl2z.reversibility(a)
            assert rep.verify()
            if a.det == -1:
                assert rep.reversible == (a @ a).is_identity()
            if gl2z.classify(a).kind is not Kind.HYPERBOLIC:
                assert rep.strongly_reversible
            if brute_reverser_search(a, 25) is not None:
                assert rep.reversible
            if brute_reverser_search(a, 25, involutive=True) is not None:
                assert rep.strongly_reversible
            n = gl2z.reversibility(-a)
            assert (n.reversible, n.strongly_reversible) == (rep.reversible, rep.strongly_reversible)

    def test_oracle_finds_all_positive_certificates(self):
        # reversers of the grid are small enough for the bound-25 search
        for a in GRID3:
            rep = gl2z.reversibility(a)
            if rep.reversible:
                assert brute_reverser_search(a, 25) is not None

    def test_wider_grid_consistency(self):
        """Beyond the exhaustive grid: negative verdicts never have a brute witness."""
        found_irreversible = found_weak = 0
        for a in enumerate_unimodular(16):
            if a.det != 1 or abs(a.trace) <= 2:
                continue
            rep = gl2z.reversibility(a)
            assert rep.verify()
            if not rep.reversible:
                found_irreversible += 1
                assert brute_reverser_search(a, 8) is None
            elif not rep.strongly_reversible:
                found_weak += 1
                assert brute_reverser_search(a, 8, involutive=True) is None
        assert found_irreversible > 0 and found_weak > 0
        a = UniMat(4, 9, 7, 16)
        assert not gl2z.reversibility(a).reversible and brute_reverser_search(a, 30) is None

    def test_reversers_coset(self):
        for a in [CAT, UniMat(3, 2, 1, 1), UniMat(0, -1, 1, 0), UniMat(1, 2, 0, 1)]:
            inv = a.inverse()
            rs = list(gl2z.reversers(a, 2))
            assert rs and all(r.conj(a) == inv for r in rs)


class TestFixedPairs:
    def test_examples(self):
        r = gl2z.reciprocal_fixed_points(CAT)
        assert (r.sum, r.product, r.reciprocal) == (1, -1, True)
        r = gl2z.reciprocal_fixed_points(UniMat(3, 1, 2, 1))
        assert (r.sum, r.product, r.reciprocal, r.symmetric) == (1, Fraction(-1, 2), False, False)
        r = gl2z.reciprocal_fixed_points(UniMat(3, -1, 1, 0))
        assert (r.sum, r.product, r.reciprocal) == (3, 1, True)
        with pytest.raises(NotHyperbolic):
            gl2z.reciprocal_fixed_points(UniMat(1, 1, 0, 1))

    def test_reciprocal_implies_reversible(self):
        # the pair test lives in PGL: for det 1 it gives reversibility in GL(2, Z),
        # for det -1 it gives a conjugacy between A and -A^-1
        seen = set()
        for a in enumerate_unimodular(4):
            if gl2z.classify(a).kind is not Kind.HYPERBOLIC or gl2z.is_involution(a):
                continue
            r = gl2z.reciprocal_fixed_points(a)
            if r.defined and (r.reciprocal or r.symmetric):
                seen.add(a.det)
                if a.det == 1:
                    assert gl2z.reversibility(a).reversible
                else:
                    assert gl2z.conjugacy_test(a, -a.inverse()) is not None
        assert seen == {1, -1}
