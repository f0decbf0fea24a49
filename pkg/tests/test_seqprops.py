"""Sequence screens: representable sets, sparse gaps, count growth."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lacunary.errors import BudgetError, SequenceError
from lacunary.repcount import dnq_general
from lacunary.seqprops import (
    check_loose,
    check_sparse,
    classify,
    custom_sequence,
    factorial_sequence,
    fib_sequence,
    geomfloor_sequence,
    naturals_sequence,
    pow2_sequence,
    representable_set,
    sequence_from_file,
    sequence_preset,
)


def popcount(n: int) -> int:
    return bin(n).count("1")


class TestSequences:
    def test_preset_prefixes(self):
        assert pow2_sequence().terms(4) == [1, 2, 4, 8]
        assert factorial_sequence().terms(4) == [1, 2, 6, 24]
        assert fib_sequence().terms(5) == [1, 2, 3, 5, 8]
        assert naturals_sequence().terms(3) == [1, 2, 3]
        assert geomfloor_sequence("3/2").terms(5) == [1, 2, 3, 5, 7]

    def test_terms_up_to(self):
        assert pow2_sequence().terms_up_to(10) == [1, 2, 4, 8]
        assert fib_sequence().terms_up_to(1) == [1]

    def test_custom_validation(self):
        with pytest.raises(SequenceError):
            custom_sequence([1, 3, 3]).terms(3)
        with pytest.raises(SequenceError):
            custom_sequence([0, 1]).terms(2)

    def test_sequence_from_file(self, tmp_path):
        path = tmp_path / "seq.txt"
        path.write_text("2\n3\n\n10\n")
        assert sequence_from_file(str(path)).terms(3) == [2, 3, 10]
        bad = tmp_path / "bad.txt"
        bad.write_text("5\n4\n")
        with pytest.raises(SequenceError, match="bad.txt:2"):
            sequence_from_file(str(bad))

    def test_sequence_preset_parsing(self):
        assert sequence_preset("custom:1,4,9").terms(3) == [1, 4, 9]
        assert sequence_preset("fib").name == "fib"
        with pytest.raises(SequenceError):
            sequence_preset("pow2:3")
        with pytest.raises(SequenceError):
            sequence_preset("custom:")
        with pytest.raises(SequenceError):
            sequence_preset("nope")


class TestRepresentableSet:
    @given(st.integers(min_value=1, max_value=4))
    def test_pow2_matches_popcount_criterion(self, q: int):
        reps = representable_set(pow2_sequence(), q, 1024)
        expected = [n for n in range(1, 1025) if popcount(n) <= q]
        assert reps == expected

    @given(st.integers(min_value=1, max_value=3),
           st.integers(min_value=0, max_value=400))
    def test_monotone_in_q(self, q: int, limit: int):
        smaller = set(representable_set(fib_sequence(), q, limit))
        larger = set(representable_set(fib_sequence(), q + 1, limit))
        assert smaller <= larger

    @given(st.integers(min_value=1, max_value=128),
           st.integers(min_value=1, max_value=3))
    def test_membership_matches_counts(self, m: int, q: int):
        member = m in representable_set(fib_sequence(), q, 128)
        by_counts = any(dnq_general(fib_sequence(), m, j, mode="unordered") > 0
                        for j in range(1, q + 1))
        assert member == by_counts

    def test_budget(self):
        with pytest.raises(BudgetError):
            representable_set(pow2_sequence(), 4, 1 << 10, table_budget=64)


class TestSparseness:
    def test_pow2_witnesses(self):
        assert check_sparse(pow2_sequence(), 2, 5, 4096).witness == (40, 48, 64)
        assert check_sparse(pow2_sequence(), 1, 5, 4096).witness == (8, 16, 32)

    def test_witness_is_smallest_and_reverifies(self):
        report = check_sparse(pow2_sequence(), 2, 5, 4096)
        a, b, c = report.witness
        assert report.found and report.status == "found"
        reps = representable_set(pow2_sequence(), 2, 4096)
        i = reps.index(a)
        assert reps[i:i + 3] == [a, b, c]  # consecutive: nothing in between
        assert b - a > 5 and c - b > 5
        earlier = [(x, y, z) for x, y, z in zip(reps, reps[1:], reps[2:])
                   if y - x > 5 and z - y > 5]
        assert earlier[0] == (a, b, c)

    def test_naturals_never_sparse(self):
        report = check_sparse(naturals_sequence(), 1, 1, 1000)
        assert not report.found
        assert report.status == "inconclusive"
        assert report.witness is None

    def test_json_dict(self):
        data = check_sparse(pow2_sequence(), 2, 5, 4096).to_json_dict()
        assert data["witness"] == [40, 48, 64]
        assert data["status"] == "found"


class TestLooseness:
    def test_naturals_conventions(self):
        at_most = check_loose(naturals_sequence(), 2, 100)
        assert (at_most.max_count, at_most.argmax) == (51, 100)
        exact = check_loose(naturals_sequence(), 2, 100, exactly=True)
        assert (exact.max_count, exact.argmax) == (50, 100)
        assert at_most.verdict == "growth-detected"

    def test_naturals_growth_lower_bound(self):
        for N in (10, 100, 500, 1000):
            report = check_loose(naturals_sequence(), 2, N)
            assert report.max_count >= N / 2 - 1, N

    def test_pow2_stays_bounded(self):
        report = check_loose(pow2_sequence(), 2, 1 << 12)
        assert report.max_count == 2
        assert report.threshold == 16
        assert report.verdict == "bounded-so-far"
        assert report.bounded_so_far

    def test_ordered_mode_knob(self):
        report = check_loose(pow2_sequence(), 2, 64, mode="ordered")
        assert report.mode == "ordered"
        assert report.max_count == 2

    @given(st.integers(min_value=1, max_value=3),
           st.integers(min_value=1, max_value=200))
    def test_histogram_accounts_for_every_n(self, q: int, N: int):
        report = check_loose(fib_sequence(), q, N)
        assert sum(report.histogram.values()) == N
        assert max(report.histogram) == report.max_count
        assert report.histogram[report.max_count] >= 1


class TestClassify:
    def test_pow2_bundle(self):
        report = classify(pow2_sequence(), 3, 4096, 5)
        assert all(report.sparse[q].found for q in (1, 2, 3))
        assert all(report.loose[q].bounded_so_far for q in (1, 2, 3))
        assert report.loose[2].max_count == 2

    def test_naturals_bundle_flags_failure(self):
        report = classify(naturals_sequence(), 2, 1000, 1)
        assert not report.sparse[1].found
        assert report.loose[2].verdict == "growth-detected"
        assert report.loose[2].max_count >= 499

    def test_json_shape(self):
        data = classify(pow2_sequence(), 2, 256, 5).to_json_dict()
        assert set(data) == {"sequence", "q_max", "N", "M", "per_q", "note"}
        assert set(data["per_q"]) == {"1", "2"}
        assert set(data["per_q"]["1"]) == {"sparse", "loose"}
