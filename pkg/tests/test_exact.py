"""Exact scalar, polynomial-in-b, and rational-function arithmetic."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dwb.exact import BPoly, BRat, bpoly_gcd, pochhammer, pochhammer_shift_residual

B = BPoly.var()

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=100)
small_bpolys = st.lists(rationals, min_size=0, max_size=4).map(BPoly)


class TestRat:
    def test_add(self):
        assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)

    def test_mul_identity(self):
        x = Fraction(-7, 13)
        assert x * 1 == x

    def test_sub_cancels_to_canonical_zero(self):
        z = Fraction(7, 3) - Fraction(7, 3)
        assert z == 0
        assert z.numerator == 0 and z.denominator == 1

    def test_div(self):
        assert Fraction(1, 2) / Fraction(3, 4) == Fraction(2, 3)

    def test_div_by_zero_is_explicit(self):
        with pytest.raises(ZeroDivisionError):
            Fraction(1, 2) / Fraction(0)

    def test_canonical_form(self):
        x = Fraction(6, -4)
        assert x.numerator == -3 and x.denominator == 2


class TestBPoly:
    def test_mul(self):
        assert (B + 1) * (B + 2) == BPoly((2, 3, 1))

    def test_add_zero(self):
        p = BPoly((Fraction(1, 2), 0, 3))
        assert p + BPoly.zero() == p

    def test_sub(self):
        assert BPoly((2, 3, 1)) - (B + 1) == BPoly((1, 2, 1))

    def test_trailing_zeros_stripped(self):
        assert BPoly((1, 2, 0, 0)).degree == 1
        assert BPoly((0, 0)).is_zero
        assert BPoly(()).degree == -1

    def test_eval_root(self):
        p = (B + 1) * (B + 2)
        assert p(Fraction(-1)) == 0

    def test_eval_constant_term(self):
        assert ((B + 1) * (B + 2))(0) == 2

    def test_eval_horner(self):
        assert ((B + 1) * (B + 2))(Fraction(1, 2)) == Fraction(15, 4)

    def test_exact_div(self):
        p = (B + 1) * (B + 2) * (B - 3)
        assert p.exact_div(B + 2) == (B + 1) * (B - 3)
        with pytest.raises(ValueError):
            p.exact_div(B - 1)

    def test_str(self):
        assert str((B + 1) * (B + 2)) == "b^2+3*b+2"
        assert str(-(B + 2)) == "-(b+2)"
        assert str(BPoly.const(Fraction(-1))) == "-1"
        assert str(BPoly.zero()) == "0"
        assert str(Fraction(3, 2) * B) == "3/2*b"

    @settings(max_examples=60)
    @given(p=small_bpolys, q=small_bpolys)
    def test_degree_additive_under_mul(self, p, q):
        if p.is_zero or q.is_zero:
            assert (p * q).is_zero
        else:
            assert (p * q).degree == p.degree + q.degree

    @settings(max_examples=60)
    @given(p=small_bpolys, q=small_bpolys, r=small_bpolys)
    def test_distributivity(self, p, q, r):
        assert p * (q + r) == p * q + p * r


class TestPochhammer:
    def test_count_zero_is_one(self):
        assert pochhammer(B * B - 7, 0) == BPoly.one()
        assert pochhammer(Fraction(9, 7), 0) == 1

    def test_integer_product(self):
        assert pochhammer(3, 4) == 360  # 3*4*5*6

    def test_matches_term_by_term_expansion(self):
        assert pochhammer(B + 1, 2) == (B + 1) * (B + 2)

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            pochhammer(B, -1)

    @settings(max_examples=25, deadline=None)
    @given(
        c=st.lists(rationals, min_size=0, max_size=3).map(BPoly),
        m=st.integers(min_value=0, max_value=50),
    )
    def test_recurrence(self, c, m):
        assert pochhammer(c, m + 1) == pochhammer(c, m) * (c + m)

    @settings(max_examples=100, deadline=None)
    @given(c=rationals, nu=st.integers(min_value=1, max_value=50))
    def test_shift_identity_exact(self, c, nu):
        assert pochhammer_shift_residual(c, nu) == 0

    def test_shift_identity_spelled_out(self):
        c, nu = Fraction(-13, 7), 9
        lhs = pochhammer(c + 1, nu) / factorial(nu - 1) + pochhammer(c, nu + 1) / factorial(nu)
        rhs = (c + nu) * pochhammer(c + 1, nu) / factorial(nu)
        assert lhs == rhs


class TestGcd:
    def test_common_factor(self):
        p = (B + 1) * (B + 2)
        q = (B + 1) * (B - 5)
        assert bpoly_gcd(p, q) == B + 1

    def test_coprime(self):
        assert bpoly_gcd(B + 1, B + 2) == BPoly.one()

    def test_result_monic(self):
        p = 6 * (B + 3)
        q = 4 * (B + 3) * B
        assert bpoly_gcd(p, q) == B + 3

    def test_zero_operands(self):
        assert bpoly_gcd(BPoly.zero(), B + 1) == B + 1
        assert bpoly_gcd(BPoly.zero(), BPoly.zero()).is_zero


class TestBRat:
    def test_common_denominator_reduction(self):
        u = BRat(BPoly.one(), B + 1)
        v = BRat(B, B + 1)
        assert u + v == BRat.one()

    def test_mul_identity(self):
        u = BRat(B * B - 2, B + 7)
        assert u * BRat.one() == u

    def test_inverse_pair(self):
        assert BRat(B + 2) * BRat(BPoly.one(), B + 2) == BRat.one()

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            BRat(B, BPoly.zero())

    def test_div_by_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            BRat(B) / BRat.zero()

    def test_eval(self):
        u = BRat(B + 2, B + 1)
        assert u(1) == Fraction(3, 2)
        with pytest.raises(ZeroDivisionError):
            u(-1)

    def test_str(self):
        assert str(BRat(B + 2)) == "b+2"
        assert str(BRat(B, B + 1)) == "(b)/(b+1)"

    @settings(max_examples=60)
    @given(num=small_bpolys, den=small_bpolys)
    def test_canonicalization_idempotent(self, num, den):
        if den.is_zero:
            return
        u = BRat(num, den)
        again = BRat(u.num, u.den)
        assert again.num == u.num and again.den == u.den
        # canonical: monic denominator, reduced
        assert u.den.lead == 1
        if not u.num.is_zero:
            assert bpoly_gcd(u.num, u.den) == BPoly.one()

    @settings(max_examples=40)
    @given(a=small_bpolys, b_=small_bpolys, c=small_bpolys, d=small_bpolys)
    def test_field_arithmetic_consistent(self, a, b_, c, d):
        if b_.is_zero or d.is_zero:
            return
        u, v = BRat(a, b_), BRat(c, d)
        assert (u + v) - v == u
        if not v.is_zero:
            assert (u / v) * v == u
