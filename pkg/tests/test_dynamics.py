import random
import re
import xml.etree.ElementTree as ET
from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toralrev import dynamics, lattice
from toralrev.affine import AffineElement, conjugate_in_G
from toralrev.dynamics import INFINITE, EntropyKind
from toralrev.errors import EigenvalueOne
from toralrev.exactmath import IDENTITY, TorusPoint, UniMat
from toralrev.oracle import enumerate_unimodular

from conftest import random_point

F = Fraction
CAT = UniMat(2, 1, 1, 1)
SHEAR = UniMat(1, 1, 0, 1)


class TestOrbits:
    def test_half_translation(self):
        rec = dynamics.orbit(AffineElement(IDENTITY, TorusPoint(F(1, 2), 0)), TorusPoint.zero(), 10)
        assert (rec.preperiod, rec.period) == (0, 2)
        assert rec.cycle() == [TorusPoint(0, 0), TorusPoint(F(1, 2), 0)]

    def test_cat_fifths(self):
        f = AffineElement(CAT, TorusPoint.zero())
        rec = dynamics.orbit(f, TorusPoint(F(1, 5), F(2, 5)), 100)
        assert rec.period is not None and 24 % rec.period == 0
        p = rec.start
        for _ in range(rec.period):
            p = f(p)
        assert p == rec.start

    def test_shear_orbit(self):
        f = AffineElement(SHEAR, TorusPoint(0, F(1, 3)))
        rec = dynamics.orbit(f, TorusPoint.zero(), 100)
        assert rec.period == 3
        assert all(f(rec.points[i]) == rec.points[i + 1] for i in range(len(rec.points) - 1))

    def test_step_cap(self):
        rec = dynamics.orbit(AffineElement(IDENTITY, TorusPoint(F(1, 97), 0)), TorusPoint.zero(), 10)
        assert rec.period is None and len(rec.points) == 11

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(list(enumerate_unimodular(2))), st.integers(1, 7), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
    def test_denominators_and_termination(self, a, q, i, j, k):
        f = AffineElement(a, TorusPoint(F(i % q, q), F(j % q, q)))
        x0 = TorusPoint(F(k % q, q), 0)
        rec = dynamics.orbit(f, x0, q * q + 1)
        assert rec.period is not None and rec.preperiod == 0  # invertible map
        assert all(q % p.denominator == 0 for p in rec.points)
        assert rec.points[rec.preperiod + rec.period] == rec.points[rec.preperiod]


class TestLinearizing:
    def test_examples(self):
        assert dynamics.linearizing_translation(CAT, TorusPoint.zero()) == TorusPoint.zero()
        b = TorusPoint(F(1, 2), F(1, 2))
        v = dynamics.linearizing_translation(CAT, b)
        assert b + CAT.apply(v.as_tuple()) == v
        with pytest.raises(EigenvalueOne):
            dynamics.linearizing_translation(SHEAR, b)

    def test_transport(self):
        rng = random.Random(1)
        for a in enumerate_unimodular(3):
            if a.minus_identity().det == 0:
                continue
            for _ in range(20):
                b = random_point(rng)
                v = dynamics.linearizing_translation(a, b)
                g = conjugate_in_G(AffineElement(a, b), AffineElement(IDENTITY, -v))
                assert g == AffineElement(a, TorusPoint.zero())


class TestEntropy:
    def test_cat(self):
        e = dynamics.entropy(CAT, 45)
        assert e.kind is EntropyKind.LOG_OF_QUADRATIC_UNIT and (e.trace_abs, e.det) == (3, 1)
        mpmath.mp.dps = 60
        ref = mpmath.nstr(mpmath.log((3 + mpmath.sqrt(5)) / 2), 45, strip_zeros=False)
        assert e.decimal_approx == ref
        assert e.decimal_approx.startswith("0.962423650119")

    def test_zero_cases(self):
        for a in (UniMat(1, 5, 0, 1), UniMat(1, 0, 0, -1), UniMat(0, -1, 1, 0), IDENTITY, -IDENTITY, UniMat(-1, 3, 0, -1)):
            assert dynamics.entropy(a).kind is EntropyKind.ZERO

    def test_against_mpmath(self):
        mpmath.mp.dps = 50
        for a in enumerate_unimodular(3):
            e = dynamics.entropy(a, 35)
            root = mpmath.sqrt(mpmath.mpc(a.trace ** 2 - 4 * a.det))
            rho = max(abs((a.trace + root) / 2), abs((a.trace - root) / 2))
            if e.kind is EntropyKind.ZERO:
                assert abs(rho - 1) < mpmath.mpf(10) ** -30
            else:
                assert abs(mpmath.mpf(e.decimal_approx) - mpmath.log(rho)) < mpmath.mpf(10) ** -32

    def test_affine_entropy(self):
        rng = random.Random(2)
        e = dynamics.entropy(CAT)
        for _ in range(50):
            assert dynamics.affine_entropy(AffineElement(CAT, random_point(rng))) == e
        assert dynamics.affine_entropy(AffineElement(IDENTITY, TorusPoint(F(1, 7), F(2, 7)))).kind is EntropyKind.ZERO
        assert dynamics.affine_entropy(AffineElement(SHEAR, TorusPoint(0, F(1, 3)))).kind is EntropyKind.ZERO

    def test_conjugacy_invariant(self):
        rng = random.Random(3)
        cs = list(enumerate_unimodular(4))
        for a in enumerate_unimodular(3):
            c = rng.choice(cs)
            assert dynamics.entropy(c.conj(a)) == dynamics.entropy(a)


class TestPeriodicPoints:
    def test_examples(self):
        assert [dynamics.periodic_point_count(CAT, n) for n in (1, 2, 3)] == [1, 5, 16]
        assert dynamics.periodic_point_count(UniMat(0, -1, 1, 0), 4) is INFINITE
        assert dynamics.periodic_point_count(SHEAR, 1) is INFINITE

    def test_lucas(self):
        lucas = [2, 1]
        for _ in range(200):
            lucas.append(lucas[-1] + lucas[-2])
        for n in range(1, 90):
            assert dynamics.periodic_point_count(CAT, n) == lucas[2 * n] - 2

    def test_matches_fixed_points_of_power(self):
        for a in enumerate_unimodular(2):
            for n in (1, 2, 3):
                p = a ** n
                c = dynamics.periodic_point_count(a, n)
                if c is INFINITE:
                    assert p.minus_identity().det == 0
                else:
                    assert lattice.fixed_points(p, TorusPoint.zero()).count == c

    def test_growth_estimates_entropy(self):
        for a in enumerate_unimodular(3):
            t, d = abs(a.trace), a.det
            if (d == 1 and t > 2) or (d == -1 and t > 0):
                assert abs(dynamics.growth_rate(a, 30) - dynamics.entropy(a).value) < Decimal("1e-3")

    def test_large_n_exact(self):
        c = dynamics.periodic_point_count(CAT, 2000)
        assert isinstance(c, int) and c.bit_length() > 2700


def _svg(text):
    root = ET.fromstring(text)
    assert root.tag.endswith("svg")
    return text


class TestRender:
    def test_empty_orbit(self):
        s = _svg(dynamics.render_orbit(None))
        assert 'class="unit-square"' in s and "orbit-point" not in s

    def test_period_two(self):
        rec = dynamics.orbit(AffineElement(IDENTITY, TorusPoint(F(1, 2), 0)), TorusPoint.zero(), 10)
        s = _svg(dynamics.render(rec))
        assert s.count('class="orbit-point"') == 2

    def test_parallelogram_nodes(self):
        for a in (CAT, UniMat(-5, 1, 1, 0), -IDENTITY, UniMat(3, 10, 2, 7)):
            r = lattice.lattice_report(a)
            s = _svg(dynamics.render(a))
            assert len(re.findall(r'class="lattice-node', s)) == r.boundary_count + r.interior_count

    def test_deterministic(self):
        assert dynamics.render_parallelogram(CAT) == dynamics.render_parallelogram(CAT)
