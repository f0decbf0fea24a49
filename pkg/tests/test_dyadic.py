"""Exactness and closure properties of dyadic numbers and intervals."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lacunary.dyadic import (
    HALF,
    ONE,
    ZERO,
    DyadicInterval,
    DyadicNumber,
    frac_part_interval,
)

mantissas = st.integers(min_value=-(1 << 64), max_value=1 << 64)
exponents = st.integers(min_value=0, max_value=96)


@st.composite
def dyadics(draw) -> DyadicNumber:
    return DyadicNumber(draw(mantissas), draw(exponents))


@st.composite
def intervals(draw) -> DyadicInterval:
    a, b = draw(dyadics()), draw(dyadics())
    return DyadicInterval(min(a, b), max(a, b))


@st.composite
def interval_points(draw) -> tuple[DyadicInterval, DyadicNumber]:
    """An interval together with a dyadic point guaranteed to lie inside."""
    x = draw(intervals())
    k = draw(st.integers(min_value=0, max_value=12))
    n = draw(st.integers(min_value=0, max_value=1 << k))
    point = x.lower + x.width * DyadicNumber(n, k)
    return x, point


def frac(x: DyadicNumber) -> Fraction:
    return x.as_fraction()


class TestDyadicNumber:
    def test_reduction(self):
        assert DyadicNumber(4, 2) == DyadicNumber(1, 0)
        assert DyadicNumber(6, 1) == DyadicNumber(3, 0)
        assert DyadicNumber(12, 3) == DyadicNumber(3, 1)
        zero = DyadicNumber(0, 57)
        assert zero == ZERO and zero.exponent == 0

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            DyadicNumber(1, -1)

    @given(dyadics())
    def test_canonical_form_fully_reduced(self, x: DyadicNumber):
        assert x.exponent == 0 or x.mantissa % 2 == 1

    @given(mantissas, exponents, st.integers(min_value=0, max_value=32))
    def test_canonical_form_unique_per_value(self, m: int, e: int, k: int):
        assert DyadicNumber(m << k, e + k) == DyadicNumber(m, e)
        assert hash(DyadicNumber(m << k, e + k)) == hash(DyadicNumber(m, e))

    def test_pow2(self):
        assert DyadicNumber.pow2(3) == DyadicNumber(8)
        assert DyadicNumber.pow2(0) == ONE
        assert frac(DyadicNumber.pow2(-2)) == Fraction(1, 4)
        assert DyadicNumber.pow2(-1) == HALF

    @given(dyadics(), dyadics())
    def test_addition_subtraction_exact(self, a: DyadicNumber, b: DyadicNumber):
        assert frac(a + b) == frac(a) + frac(b)
        assert frac(a - b) == frac(a) - frac(b)
        assert (a + b) - b == a

    @given(dyadics(), dyadics())
    def test_multiplication_exact(self, a: DyadicNumber, b: DyadicNumber):
        assert frac(a * b) == frac(a) * frac(b)

    @given(dyadics())
    def test_negation_abs(self, a: DyadicNumber):
        assert -(-a) == a
        assert frac(abs(a)) == abs(frac(a))
        assert a - a == ZERO

    @given(dyadics(), st.integers(min_value=-50, max_value=50))
    def test_int_operands(self, a: DyadicNumber, n: int):
        assert frac(a + n) == frac(a) + n
        assert frac(a - n) == frac(a) - n
        assert frac(n - a) == n - frac(a)
        assert frac(a * n) == frac(a) * n

    @given(dyadics(), dyadics())
    def test_comparisons_match_fractions(self, a: DyadicNumber, b: DyadicNumber):
        assert (a < b) == (frac(a) < frac(b))
        assert (a <= b) == (frac(a) <= frac(b))
        assert (a > b) == (frac(a) > frac(b))
        assert (a >= b) == (frac(a) >= frac(b))
        assert (a == b) == (frac(a) == frac(b))

    @given(dyadics(), st.integers(min_value=-80, max_value=80))
    def test_scale_pow2(self, a: DyadicNumber, k: int):
        assert frac(a.scale_pow2(k)) == frac(a) * Fraction(2) ** k

    @given(dyadics())
    def test_floor(self, a: DyadicNumber):
        assert a.floor() == math.floor(frac(a))

    @given(dyadics())
    def test_decimal_string_exact(self, a: DyadicNumber):
        assert Fraction(a.to_decimal_string()) == frac(a)

    @given(dyadics())
    def test_json_round_trip(self, a: DyadicNumber):
        assert DyadicNumber.from_json_dict(a.to_json_dict()) == a

    def test_sign_is_zero(self):
        assert DyadicNumber(-3, 2).sign == -1
        assert ZERO.sign == 0
        assert ONE.sign == 1
        assert ZERO.is_zero and not HALF.is_zero


class TestDyadicInterval:
    def test_endpoint_order_enforced(self):
        with pytest.raises(ValueError):
            DyadicInterval(ONE, ZERO)

    def test_point_and_width(self):
        box = DyadicInterval.point(7)
        assert box.lower == box.upper == DyadicNumber(7)
        assert box.width == ZERO
        assert DyadicInterval(ZERO, ONE).width == ONE

    def test_contains_and_intersects(self):
        box = DyadicInterval(HALF, DyadicNumber(3))
        assert box.contains(1) and box.contains(HALF)
        assert not box.contains(4)
        assert box.intersects(DyadicInterval(DyadicNumber(3), DyadicNumber(5)))
        assert not box.intersects(DyadicInterval(DyadicNumber(4), DyadicNumber(5)))

    def test_contains_zero_is_a_bool_property(self):
        # Regression guard: a bound method here would always be truthy.
        assert DyadicInterval(DyadicNumber(-1), ONE).contains_zero is True
        assert DyadicInterval(ONE, DyadicNumber(2)).contains_zero is False
        assert DyadicInterval(ZERO, ZERO).contains_zero is True

    @given(interval_points(), interval_points())
    def test_arithmetic_containment(self, xp, yp):
        (X, x), (Y, y) = xp, yp
        assert (X + Y).contains(x + y)
        assert (X - Y).contains(x - y)
        assert (X * Y).contains(x * y)
        assert (-X).contains(-x)

    @given(interval_points(), st.integers(min_value=-40, max_value=40))
    def test_scale_containment(self, xp, k: int):
        X, x = xp
        assert X.scale_pow2(k).contains(x.scale_pow2(k))

    @given(intervals(), intervals())
    def test_product_endpoints_are_tight(self, X: DyadicInterval, Y: DyadicInterval):
        corners = [frac(a) * frac(b)
                   for a in (X.lower, X.upper) for b in (Y.lower, Y.upper)]
        prod = X * Y
        assert frac(prod.lower) == min(corners)
        assert frac(prod.upper) == max(corners)

    @given(intervals())
    def test_json_round_trip(self, X: DyadicInterval):
        assert DyadicInterval.from_json_dict(X.to_json_dict()) == X


class TestFracPartInterval:
    def test_already_fractional(self):
        box = DyadicInterval(DyadicNumber(1, 2), HALF)
        assert frac_part_interval(box) == box

    def test_shifted_down(self):
        box = DyadicInterval(DyadicNumber(13, 2), DyadicNumber(7, 1))
        assert frac_part_interval(box) == DyadicInterval(DyadicNumber(1, 2), HALF)

    def test_negative_block(self):
        box = DyadicInterval(DyadicNumber(-3, 2), DyadicNumber(-1, 1))
        assert frac_part_interval(box) == DyadicInterval(DyadicNumber(1, 2), HALF)

    def test_integer_point(self):
        assert frac_part_interval(DyadicInterval.point(7)) == DyadicInterval.point(0)

    def test_straddles_integer(self):
        box = DyadicInterval(DyadicNumber(7, 3), DyadicNumber(9, 3))
        assert frac_part_interval(box) is None

    def test_touching_upper_integer(self):
        assert frac_part_interval(DyadicInterval(HALF, ONE)) is None

    @given(interval_points())
    def test_containment_when_defined(self, xp):
        X, x = xp
        reduced = frac_part_interval(X)
        if reduced is None:
            return
        shift = x.floor()
        assert reduced.contains(x - shift)
