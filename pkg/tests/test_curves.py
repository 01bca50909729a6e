"""Construction and exact verification of the degree-n invariant curves."""

from fractions import Fraction
from math import factorial

import pytest

from dwb.curves import (
    Family,
    InvariantCurve,
    build_invariant_curve,
    build_system,
    check_euler_y,
    check_lemma2,
    invariance_record,
    leading_coefficient,
    verify_invariance,
)
from dwb.exact import BPoly, pochhammer
from dwb.xypoly import XYPoly

B = BPoly.var()


class TestBuildSystem:
    def test_degree_one_minus(self):
        s = build_system(1, Family.MINUS_Y)
        assert s.P == XYPoly({(1, 0): 1, (2, 0): -1})
        assert s.Q == XYPoly({(0, 1): 1, (1, 1): B, (0, 2): -1})

    def test_degree_two_plus(self):
        s = build_system(2, Family.PLUS_Y)
        assert s.Q == XYPoly({(0, 1): 2, (1, 1): B, (0, 2): 1})

    def test_families_share_p(self):
        for n in (1, 3, 7):
            assert build_system(n, Family.MINUS_Y).P == build_system(n, Family.PLUS_Y).P

    def test_rejects_n_zero(self):
        with pytest.raises(ValueError):
            build_system(0, Family.MINUS_Y)


class TestBuildCurve:
    def test_degree_one_minus(self):
        c = build_invariant_curve(1, Family.MINUS_Y)
        assert c.F == XYPoly({(1, 0): B + 1, (0, 1): -1})
        assert c.K == XYPoly({(0, 0): 1, (1, 0): -1, (0, 1): -1})

    def test_degree_one_plus(self):
        c = build_invariant_curve(1, Family.PLUS_Y)
        assert c.F == XYPoly({(1, 0): B + 1, (0, 1): 1})
        assert c.K == XYPoly({(0, 0): 1, (1, 0): -1, (0, 1): 1})

    def test_degree_two_minus(self):
        c = build_invariant_curve(2, Family.MINUS_Y)
        expected = XYPoly({(2, 0): (B + 1) * (B + 2), (1, 1): -(B + 2), (0, 1): 1})
        assert c.F == expected
        assert c.K == XYPoly({(0, 0): 2, (1, 0): -2, (0, 1): -1})

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 9])
    @pytest.mark.parametrize("family", list(Family))
    def test_leading_coefficient_is_rising_factorial(self, n, family):
        c = build_invariant_curve(n, family)
        assert c.F.coeff(n, 0) == pochhammer(B + 1, n)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 8])
    def test_shape(self, n):
        for family in Family:
            c = build_invariant_curve(n, family)
            assert c.F.total_degree == n
            assert c.F.degree_in("y") == 1
            assert c.K.total_degree == 1

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
    def test_y_coefficient_constant_term(self, n):
        c = build_invariant_curve(n, Family.MINUS_Y)
        assert c.F.coeff(0, 1) == BPoly.const((-1) ** n * factorial(n - 1))

    def test_rejects_n_zero(self):
        with pytest.raises(ValueError):
            build_invariant_curve(0, Family.PLUS_Y)


class TestInvariance:
    @pytest.mark.parametrize("family", list(Family))
    def test_degree_one(self, family):
        c = build_invariant_curve(1, family)
        s = build_system(1, family)
        assert verify_invariance(c, s).is_zero

    def test_degree_one_expansion_matches_oracle(self):
        # expand both sides by plain ring arithmetic and compare
        c = build_invariant_curve(1, Family.MINUS_Y)
        s = build_system(1, Family.MINUS_Y)
        lhs = s.P * c.F.diff("x") + s.Q * c.F.diff("y")
        assert lhs == c.K * c.F

    @pytest.mark.parametrize("n", range(1, 11))
    @pytest.mark.parametrize("family", list(Family))
    def test_sweep(self, n, family):
        c = build_invariant_curve(n, family)
        s = build_system(n, family)
        assert verify_invariance(c, s).is_zero

    @pytest.mark.parametrize("family", list(Family))
    def test_perturbed_cofactor_residual_is_minus_f(self, family):
        for n in (1, 2, 5):
            c = build_invariant_curve(n, family)
            s = build_system(n, family)
            mutated = InvariantCurve(n=n, family=family, F=c.F, K=c.K + 1)
            assert verify_invariance(mutated, s) == -c.F

    def test_mismatched_inputs_rejected(self):
        c = build_invariant_curve(2, Family.MINUS_Y)
        with pytest.raises(ValueError):
            verify_invariance(c, build_system(3, Family.MINUS_Y))
        with pytest.raises(ValueError):
            verify_invariance(c, build_system(2, Family.PLUS_Y))


class TestDerivativeIdentities:
    @pytest.mark.parametrize("n", range(1, 11))
    def test_lemma2_sweep(self, n):
        assert check_lemma2(n).is_zero

    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("family", list(Family))
    def test_euler_small(self, n, family):
        assert check_euler_y(n, family).is_zero

    @pytest.mark.parametrize("n", range(3, 11))
    def test_euler_sweep(self, n):
        for family in Family:
            assert check_euler_y(n, family).is_zero


class TestFamilyDuality:
    @pytest.mark.parametrize("n", [1, 2, 3, 6])
    def test_curves_related_by_y_reflection(self, n):
        minus = build_invariant_curve(n, Family.MINUS_Y)
        plus = build_invariant_curve(n, Family.PLUS_Y)
        assert minus.F.reflect_y() == plus.F
        assert minus.K.reflect_y() == plus.K


class TestRecord:
    def test_fields(self):
        r = invariance_record(2, Family.MINUS_Y)
        assert r["residual_is_zero"] is True
        assert r["n"] == 2 and r["family"] == "minus"
        assert r["F_rendered"] == "(b^2+3*b+2)*x^2 + (-(b+2))*x*y + y"
        assert r["K_rendered"] == "(-2)*x + (-1)*y + 2"
        assert r["wall_time"] >= 0

    def test_perturbations_flip_verdict(self):
        for mode in ("cofactor", "coefficient"):
            r = invariance_record(3, Family.PLUS_Y, perturb=mode)
            assert r["residual_is_zero"] is False

    def test_unknown_perturbation_rejected(self):
        with pytest.raises(ValueError):
            invariance_record(1, Family.MINUS_Y, perturb="sign")
