"""Counting representations of integers as sums of sequence terms.

The central quantity is d_n(q): the number of ways to write n as a sum of
exactly q powers of two. Two conventions coexist and are kept explicit
throughout the package:

    ordered     tuples (w_1, ..., w_q), so 3 = 2^0 + 2^1 = 2^1 + 2^0 counts
                twice: d_3(2) = 2;
    unordered   multisets, i.e. index tuples with i_1 <= ... <= i_q.

The binary-digit machinery (and the certificates built on it) uses ordered
counts; the sequence screens in :mod:`lacunary.seqprops` report both.

Small exact facts used as anchors elsewhere: d_0(0) = 1, d_3(2) = 2,
d_7(2) = 0 (seven has three binary ones), and d_n(popcount(n)) =
popcount(n)! — with q equal to the number of binary ones, each one must be
hit by exactly one tuple slot, and the slots permute freely.

Non-vanishing structure, stated precisely (n >= 1, q >= 1):

    d_n(q) != 0  <=>  popcount(n) <= q <= n.

Splitting a power 2^r into two copies of 2^(r-1) raises the summand count
by one, so every count from popcount(n) up to n (all ones) is achievable;
below popcount(n) nothing is (a sum of q powers of two has at most q binary
ones), and above n nothing is (each summand is at least 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import budgets
from .errors import BudgetError, SequenceError, SeriesError
from .series import SeriesSpec

__all__ = [
    "dnq_pow2",
    "dnq_bruteforce",
    "dnq_general",
    "RepTable",
    "weighted_digit_coeff",
    "weighted_digit_row",
    "lemma_audit",
    "AuditReport",
    "BRUTEFORCE_N_CAP",
    "BRUTEFORCE_Q_CAP",
]

BRUTEFORCE_N_CAP = budgets.BRUTEFORCE_N_CAP
BRUTEFORCE_Q_CAP = budgets.BRUTEFORCE_Q_CAP

_dnq_memo: dict[tuple[int, int], int] = {}


def dnq_pow2(n: int, q: int) -> int:
    """Ordered representations of n as a sum of exactly q powers of two.

    Memoized recurrence over the first summand, d_n(q) = sum over r of
    d_{n - 2^r}(q - 1), with the exact vanishing criterion as a shortcut:
    nonzero iff popcount(n) <= q <= n (and d_0(0) = 1).
    """
    if n < 0 or q < 0:
        raise ValueError("n and q must be non-negative")
    if q == 0:
        return 1 if n == 0 else 0
    if n < q or n.bit_count() > q:
        return 0
    key = (n, q)
    cached = _dnq_memo.get(key)
    if cached is not None:
        return cached
    total = 0
    power = 1
    while power <= n:
        total += dnq_pow2(n - power, q - 1)
        power <<= 1
    _dnq_memo[key] = total
    return total


def dnq_bruteforce(n: int, q: int) -> int:
    """Exhaustive oracle for :func:`dnq_pow2`; small inputs only.

    Enumerates ordered tuples slot by slot with no arithmetic shortcuts
    beyond abandoning branches whose remainder cannot be filled; the final
    slot is checked by a plain scan over powers. Deliberately independent
    of the recurrence so the two can confirm each other.
    """
    if n < 0 or q < 0:
        raise ValueError("n and q must be non-negative")
    if n > BRUTEFORCE_N_CAP or q > BRUTEFORCE_Q_CAP:
        raise BudgetError(
            f"brute force capped at n <= {BRUTEFORCE_N_CAP}, q <= {BRUTEFORCE_Q_CAP}")
    if q == 0:
        return 1 if n == 0 else 0

    def count(remaining: int, slots: int) -> int:
        if slots == 1:
            found = 0
            power = 1
            while power <= remaining:
                if power == remaining:
                    found += 1
                power <<= 1
            return found
        total = 0
        power = 1
        # Each of the other slots needs at least 1.
        while power <= remaining - (slots - 1):
            total += count(remaining - power, slots - 1)
            power <<= 1
        return total

    return count(n, q)


def _materialize_terms(seq, limit: int) -> list[int]:
    """Strictly increasing positive terms of ``seq`` that are <= limit."""
    if hasattr(seq, "terms_up_to"):
        terms = list(seq.terms_up_to(limit))
    else:
        terms = [int(t) for t in seq if int(t) <= limit]
    prev = 0
    for t in terms:
        if t <= prev:
            raise SequenceError(f"sequence terms must strictly increase: {prev} then {t}")
        prev = t
    return terms


@dataclass(frozen=True)
class RepTable:
    """Counts of n as a sum of exactly q sequence terms, for a whole grid.

    ``rows[q][n]`` is the count for 0 <= n <= n_max, 0 <= q <= q_max, in the
    table's mode. Built once, immutable afterwards.
    """

    sequence_name: str
    mode: str
    n_max: int
    q_max: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, seq, mode: str, n_max: int, q_max: int,
              table_budget: int | None = None, name: str | None = None) -> "RepTable":
        if mode not in ("ordered", "unordered"):
            raise ValueError(f"mode must be 'ordered' or 'unordered', got {mode!r}")
        if n_max < 0 or q_max < 0:
            raise ValueError("n_max and q_max must be non-negative")
        budget = budgets.table_budget(table_budget)
        cells = (n_max + 1) * (q_max + 1)
        if cells > budget:
            raise BudgetError(f"table of {cells} cells exceeds budget {budget}")
        terms = _materialize_terms(seq, n_max)
        if name is None:
            name = getattr(seq, "name", "custom")

        width = n_max + 1
        base = [0] * width
        base[0] = 1
        rows = [base]
        if mode == "ordered":
            for _ in range(q_max):
                prev = rows[-1]
                cur = [0] * width
                for t in terms:
                    for s in range(t, width):
                        cur[s] += prev[s - t]
                rows.append(cur)
        else:
            # Multisets with repetition: term-outer, ascending in-place update
            # so the row being read already admits further copies of the
            # current term (complete-knapsack order in both dimensions).
            grid = [base[:]] + [[0] * width for _ in range(q_max)]
            for t in terms:
                for j in range(1, q_max + 1):
                    row, below = grid[j], grid[j - 1]
                    for s in range(t, width):
                        row[s] += below[s - t]
            rows = grid
        return cls(name, mode, n_max, q_max, tuple(tuple(r) for r in rows))

    def count(self, n: int, q: int) -> int:
        if not (0 <= n <= self.n_max and 0 <= q <= self.q_max):
            raise ValueError(f"(n={n}, q={q}) outside table bounds "
                             f"({self.n_max}, {self.q_max})")
        return self.rows[q][n]

    def row(self, q: int) -> tuple[int, ...]:
        return self.rows[q]


def dnq_general(seq, n: int, q: int, mode: str = "ordered",
                table_budget: int | None = None) -> int:
    """Count of n as a sum of exactly q terms of ``seq`` (ordered/unordered)."""
    if n < 0 or q < 0:
        raise ValueError("n and q must be non-negative")
    return RepTable.build(seq, mode, n, q, table_budget=table_budget).count(n, q)


def weighted_digit_row(series: SeriesSpec, q: int, m_max: int,
                       table_budget: int | None = None) -> list[int]:
    """Coefficients c_m(q) for all m <= m_max, where series**q = sum c_m(q) 2^-m.

    c_m(q) sums the products b_{i_1}...b_{i_q} over ordered index tuples
    with a_{i_1} + ... + a_{i_q} = m. Multilinearity makes merging equal
    exponents harmless, so the series is canonicalized up front.
    """
    if q < 0 or m_max < 0:
        raise ValueError("q and m_max must be non-negative")
    if series.radix != 2:
        raise SeriesError("digit coefficients need a radix-2 series")
    budget = budgets.table_budget(table_budget)
    cells = (q + 1) * (m_max + 1)
    if cells > budget:
        raise BudgetError(f"table of {cells} cells exceeds budget {budget}")
    ser = series if series.canonicalized else series.canonicalize()
    terms, _ = ser.terms_until_exponent(m_max + 1)
    terms = [(a, b) for a, b in terms if a <= m_max]

    width = m_max + 1
    row = [0] * width
    row[0] = 1
    for _ in range(q):
        nxt = [0] * width
        for a, b in terms:
            if b == 0:
                continue
            for s in range(a, width):
                if row[s - a]:
                    nxt[s] += b * row[s - a]
        row = nxt
    return row


def weighted_digit_coeff(series: SeriesSpec, m: int, q: int,
                         table_budget: int | None = None) -> int:
    """Single digit coefficient c_m(q); see :func:`weighted_digit_row`."""
    return weighted_digit_row(series, q, m, table_budget=table_budget)[m]


@dataclass(frozen=True)
class AuditReport:
    """Result of sweeping the two counting inequalities over a grid.

    ``violations`` holds (n, q, description) triples — expected empty.
    ``max_counts`` maps q to (max ordered d_n(q), smallest n attaining it);
    ``max_multiset_counts`` does the same for the multiset counts.
    """

    n_max: int
    q_max: int
    violations: tuple[tuple[int, int, str], ...]
    max_counts: Mapping[int, tuple[int, int]]
    max_multiset_counts: Mapping[int, tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma_audit(n_max: int, q_max: int, table_budget: int | None = None) -> AuditReport:
    """Audit the two counting inequalities behind the (q!)^2 bound.

    Checked for every n <= n_max, 1 <= q <= q_max:

    * ceiling, on ordered counts:   d_n(q) <= (q!)^2;
    * step, on multiset counts:     u_n(q+1) <= 1 + q^2 * u_n(q).

    The step inequality genuinely belongs to the multiset convention. The
    argument behind it — at most one representation with all powers
    distinct, and every representation with a repeat arising from a shorter
    one by splitting a power, in at most q^2 ways — counts unordered
    collections; for ordered tuples the "at most one" clause is wrong
    ((q+1)! orderings of distinct powers), and indeed d_3(2) = 2 exceeds
    1 + 1*d_3(1) = 1. The ordered ceiling rests on a separate valid
    argument (in the recurrence over the lowest summand, at most q^2
    residues r can have d_{n-2^r}(q-1) != 0), so the audit pins each
    inequality to the convention under which it is a theorem. Zero
    violations are expected on every feasible grid.

    Both tables are rebuilt here from the additive recurrences, independent
    of :func:`dnq_pow2`'s shortcut guards; agreement of the two paths is
    asserted in tests.
    """
    if n_max < 0 or q_max < 1:
        raise ValueError("need n_max >= 0 and q_max >= 1")
    budget = budgets.table_budget(table_budget)
    cells = 2 * (n_max + 1) * (q_max + 2)
    if cells > budget:
        raise BudgetError(f"audit grids of {cells} cells exceed budget {budget}")

    powers = [1 << i for i in range(max(n_max, 1).bit_length())]
    powers = [p for p in powers if p <= n_max]
    ordered = RepTable.build(powers, "ordered", n_max, q_max + 1,
                             table_budget=table_budget, name="pow2")
    multiset = RepTable.build(powers, "unordered", n_max, q_max + 1,
                              table_budget=table_budget, name="pow2")

    violations: list[tuple[int, int, str]] = []
    max_counts: dict[int, tuple[int, int]] = {}
    max_multiset: dict[int, tuple[int, int]] = {}
    fact = 1
    for q in range(1, q_max + 1):
        fact *= q
        ceiling = fact * fact
        orow = ordered.row(q)
        urow, uabove = multiset.row(q), multiset.row(q + 1)
        best = best_n = ubest = ubest_n = 0
        for n in range(n_max + 1):
            v = orow[n]
            if v > best:
                best, best_n = v, n
            u = urow[n]
            if u > ubest:
                ubest, ubest_n = u, n
            if v > ceiling:
                violations.append((n, q, f"ordered d_n(q) = {v} > (q!)^2 = {ceiling}"))
            bound = 1 + q * q * u
            if uabove[n] > bound:
                violations.append(
                    (n, q, f"multiset u_n(q+1) = {uabove[n]} > 1 + q^2 u_n(q) = {bound}"))
        max_counts[q] = (best, best_n)
        max_multiset[q] = (ubest, ubest_n)
    return AuditReport(n_max, q_max, tuple(violations), max_counts, max_multiset)
