"""Series streams, canonicalization, enclosures, and exact digit extraction."""

from __future__ import annotations

from fractions import Fraction

import pytest

from lacunary.dyadic import DyadicNumber
from lacunary.errors import BudgetError, PrecisionError, SeriesError
from lacunary.series import (
    SERIES_PRESETS,
    SeriesSpec,
    custom_series,
    digits,
    eval_interval,
    fib_series,
    geom2_series,
    geomfloor_series,
    liouville_series,
    mahler_series,
    nmahler_series,
    nu10_series,
    partial_sum,
    series_from_file,
    series_preset,
    tail_bound,
)

# Deepest prefix whose largest exponent stays desk-sized; the factorial and
# Fibonacci exponents outgrow any usable budget long before 32 terms.
EVAL_DEPTHS = {
    "mahler": 15,
    "liouville": 8,
    "fib": 20,
    "geom2": 33,
    "nmahler": 13,
}


def canonical_presets():
    for name in sorted(EVAL_DEPTHS):
        yield name, SERIES_PRESETS[name]().canonicalize()


class TestStreams:
    def test_preset_term_prefixes(self):
        assert mahler_series().terms(5) == [(1, 1), (2, 1), (4, 1), (8, 1), (16, 1)]
        assert liouville_series().terms(4) == [(1, 1), (1, 1), (2, 1), (6, 1)]
        assert fib_series().terms(5) == [(1, 1), (1, 1), (2, 1), (3, 1), (5, 1)]
        assert geom2_series().terms(3) == [(0, 1), (1, 1), (2, 1)]
        assert nmahler_series().terms(4) == [(1, 0), (2, 1), (4, 2), (8, 3)]
        assert nu10_series().terms(3) == [(1, 1), (2, 1), (4, 1)]
        assert nu10_series().radix == 10

    def test_canonicalize_merges_repeated_exponents(self):
        canon = liouville_series().canonicalize()
        assert canon.terms(4) == [(1, 2), (2, 1), (6, 1), (24, 1)]
        assert fib_series().canonicalize().terms(4) == [(1, 2), (2, 1), (3, 1), (5, 1)]

    def test_canonicalize_is_identity_on_canonical(self):
        series = mahler_series()
        assert series.canonicalize() is series

    def test_custom_series_finite_merge(self):
        series = custom_series(pairs=[(3, 1), (3, 1), (5, -1)])
        canon = series.canonicalize()
        assert canon.terms(2) == [(3, 2), (5, -1)]

    def test_geomfloor_strictly_increasing_with_multiplicities(self):
        canon = geomfloor_series(Fraction(3, 2)).canonicalize()
        terms = canon.terms(7)
        exponents = [a for a, _ in terms]
        assert exponents == sorted(set(exponents))
        assert terms[0] == (1, 2)
        assert all(b >= 1 for _, b in terms)

    def test_validation_rejects_bad_streams(self):
        with pytest.raises(SeriesError):
            custom_series(pairs=[(-1, 1)]).terms(1)
        with pytest.raises(SeriesError):
            custom_series(pairs=[(4, 1), (2, 1)]).terms(2)
        oversized = SeriesSpec("bad", exponents=lambda: iter([1]),
                               coefficients=lambda: iter([2]), coeff_bound=1)
        with pytest.raises(SeriesError):
            oversized.terms(1)

    def test_terms_until_exponent(self):
        prefix, exhausted = mahler_series().terms_until_exponent(8)
        assert prefix == [(1, 1), (2, 1), (4, 1), (8, 1)]
        assert not exhausted
        prefix, exhausted = custom_series(exponents=[1, 3]).terms_until_exponent(100)
        assert prefix == [(1, 1), (3, 1)]
        assert exhausted

    def test_series_from_file(self, tmp_path):
        path = tmp_path / "exps.txt"
        path.write_text("1\n\n4\n9\n")
        series = series_from_file(str(path))
        assert series.terms(3) == [(1, 1), (4, 1), (9, 1)]
        bad = tmp_path / "bad.txt"
        bad.write_text("1\nx\n")
        with pytest.raises(SeriesError, match="bad.txt:2"):
            series_from_file(str(bad))

    def test_series_preset_parsing(self):
        assert series_preset("mahler").name == "mahler"
        assert series_preset("geomfloor:3/2").name.startswith("geomfloor")
        with pytest.raises(SeriesError):
            series_preset("mahler:3")
        with pytest.raises(SeriesError):
            series_preset("geomfloor")
        with pytest.raises(SeriesError):
            series_preset("unknown-series")


class TestEnclosures:
    def test_partial_sum_anchors(self):
        assert partial_sum(mahler_series(), 3) == DyadicNumber(13, 4)
        canon = liouville_series().canonicalize()
        assert partial_sum(canon, 2) == DyadicNumber(5, 2)

    def test_partial_sum_matches_fractions(self):
        for name, canon in canonical_presets():
            depth = EVAL_DEPTHS[name]
            terms = canon.terms(depth)
            acc = Fraction(0)
            for count in range(1, depth + 1):
                a, b = terms[count - 1]
                acc += Fraction(b, 2 ** a)
                assert partial_sum(canon, count).as_fraction() == acc, (name, count)

    def test_partial_sum_budget(self):
        canon = liouville_series().canonicalize()
        with pytest.raises(BudgetError):
            partial_sum(canon, 10)  # exponent 10! exceeds the default budget

    def test_tail_bound_anchors(self):
        assert tail_bound(mahler_series(), 3) == DyadicNumber.pow2(-7)
        canon = liouville_series().canonicalize()
        assert tail_bound(canon, 3) == DyadicNumber.pow2(-23)
        assert tail_bound(canon, 0) == DyadicNumber(2)

    def test_tail_bound_requires_canonical(self):
        with pytest.raises(SeriesError):
            tail_bound(liouville_series(), 2)

    def test_tail_bound_exhausted_series_is_zero(self):
        series = custom_series(exponents=[2, 5]).canonicalize()
        assert tail_bound(series, 2) == DyadicNumber(0)
        assert eval_interval(series, 2).width == DyadicNumber(0)

    def test_eval_interval_requires_dyadic_radix(self):
        with pytest.raises(SeriesError):
            eval_interval(nu10_series(), 3)

    def test_nestedness(self):
        for name, canon in canonical_presets():
            depth = EVAL_DEPTHS[name]
            boxes = [eval_interval(canon, count) for count in range(depth + 1)]
            for i in range(len(boxes)):
                for j in range(i + 1, len(boxes)):
                    assert boxes[i].contains(boxes[j].lower), (name, i, j)
                    assert boxes[i].contains(boxes[j].upper), (name, i, j)

    def test_tail_soundness(self):
        for name, canon in canonical_presets():
            depth = EVAL_DEPTHS[name]
            sums = [partial_sum(canon, count) for count in range(depth + 1)]
            for count in range(depth + 1):
                box = eval_interval(canon, count)
                for ahead in range(count, min(count + 32, depth) + 1):
                    assert box.contains(sums[ahead]), (name, count, ahead)


class TestDigits:
    def test_mahler_binary_anchor(self):
        result = digits(mahler_series(), 2, 16)
        assert result.sign == 1
        assert result.integer_part == 0
        assert result.digits == "1101000100000001"
        assert str(result) == "0.1101000100000001 (base 2)"

    def test_nu10_decimal_anchor(self):
        result = digits(nu10_series(), 10, 17)
        assert (result.sign, result.integer_part) == (1, 0)
        assert result.digits == "11010001000000010"

    def test_liouville_binary_anchor(self):
        result = digits(liouville_series(), 2, 8)
        assert result.integer_part == 1
        assert result.digits == "01000100"

    def test_fib_binary_anchor(self):
        # Exponents 1, 2, 3, 5, 8, 13 with the two leading terms merged into
        # the integer part: lambda_fib = 1 + 2^-2 + 2^-3 + 2^-5 + 2^-8 + ...
        result = digits(fib_series(), 2, 13)
        assert result.integer_part == 1
        assert result.digits == "0110100100001"

    def test_finite_negative_series(self):
        series = custom_series(pairs=[(1, -1)])
        result = digits(series, 2, 4)
        assert (result.sign, result.integer_part, result.digits) == (-1, 0, "1000")

    def test_geom2_never_settles(self):
        with pytest.raises(PrecisionError) as info:
            digits(geom2_series(), 2, 4)
        err = info.value
        assert err.sign == 1
        assert err.integer_part is None
        assert err.achieved_prefix == ""

    def test_budget_failure_reports_partial_prefix(self):
        with pytest.raises(PrecisionError) as info:
            digits(mahler_series(), 2, 64, exponent_budget=40)
        err = info.value
        assert err.integer_part == 0
        assert err.achieved_prefix == "1101000100000001000000000000000"
        assert err.sign == 1

    def test_digit_stability(self):
        cases = [
            ("mahler", 2), ("liouville", 2), ("fib", 2),
            ("nmahler", 2), ("nu10", 10), ("mahler", 10),
        ]
        for name, base in cases:
            series = SERIES_PRESETS[name]()
            for count in (1, 7, 50, 100, 190):
                short = digits(series, base, count)
                longer = digits(series, base, count + 10)
                assert longer.digits.startswith(short.digits), (name, base, count)
                assert longer.integer_part == short.integer_part
                assert longer.sign == short.sign
