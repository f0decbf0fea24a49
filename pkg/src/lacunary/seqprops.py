"""Desk-scale screens for sum-of-terms structure of integer sequences.

Given a strictly increasing sequence of positive integers, these analyzers
compute which numbers are sums of at most q terms (repetition allowed),
hunt for three consecutive representable numbers separated by wide gaps,
and measure how fast the representation counts d_n(q) grow. The screens
are exploratory: a finite scan can exhibit a witness (a concrete gap
triple) or a growth trend, but never proves a property of the infinite
sequence; reports say so explicitly.

Counting conventions. Representability ("is n a sum of at most q terms?")
is a plain yes/no and needs no convention. The counts behind the looseness
screen do need one, and two knobs are exposed:

    mode     "unordered" (multisets, the default) or "ordered" (tuples);
    exactly  count sums of exactly q terms instead of the default
             "at most q" (any number of terms from 1 to q).

The default (unordered, at most q) matches the representability screen: a
number enters the q-representable set exactly when its count is positive.
Boundedness of the counts does not depend on the knobs (the conventions
differ by at most a q! factor and a sum of q rows), but the numbers
reported do; see :class:`LoosenessReport.max_count` for examples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Mapping

from . import budgets
from .errors import BudgetError, SequenceError
from .repcount import RepTable

__all__ = [
    "SequenceSpec",
    "SparsenessReport",
    "LoosenessReport",
    "ClassificationReport",
    "representable_set",
    "check_sparse",
    "check_loose",
    "classify",
    "pow2_sequence",
    "factorial_sequence",
    "fib_sequence",
    "naturals_sequence",
    "geomfloor_sequence",
    "custom_sequence",
    "sequence_from_file",
    "sequence_preset",
    "SEQUENCE_PRESETS",
]

DESK_SCALE_NOTE = ("finite-scan evidence: witnesses and growth trends are "
                   "facts about the scanned range only, not proofs about the "
                   "infinite sequence")


class SequenceSpec:
    """Strictly increasing positive integers, generated lazily.

    ``generator`` is a restartable factory; strict increase and positivity
    are enforced as terms are materialized, so a bad custom generator fails
    loudly at first use rather than corrupting downstream tables.
    """

    def __init__(self, name: str, generator: Callable[[], Iterator[int]]):
        self.name = name
        self._generator = generator

    def __repr__(self) -> str:
        return f"SequenceSpec({self.name!r})"

    def _stream(self) -> Iterator[int]:
        prev = 0
        for t in self._generator():
            t = int(t)
            if t <= 0:
                raise SequenceError(f"sequence {self.name!r}: term {t} is not positive")
            if t <= prev:
                raise SequenceError(
                    f"sequence {self.name!r}: terms must strictly increase, got {t} after {prev}")
            prev = t
            yield t

    def terms(self, count: int) -> list[int]:
        if count < 0:
            raise ValueError("count must be non-negative")
        return list(itertools.islice(self._stream(), count))

    def terms_up_to(self, limit: int) -> list[int]:
        """All terms ≤ limit (finite because terms strictly increase)."""
        out: list[int] = []
        for t in self._stream():
            if t > limit:
                break
            out.append(t)
        return out


def pow2_sequence() -> SequenceSpec:
    return SequenceSpec("pow2", lambda: (1 << i for i in itertools.count()))


def factorial_sequence() -> SequenceSpec:
    def gen() -> Iterator[int]:
        value, n = 1, 1
        while True:
            yield value
            n += 1
            value *= n
    return SequenceSpec("factorial", gen)


def fib_sequence() -> SequenceSpec:
    # 1, 2, 3, 5, 8, ... — the duplicate leading 1 is dropped so the
    # sequence strictly increases.
    def gen() -> Iterator[int]:
        a, b = 1, 2
        while True:
            yield a
            a, b = b, a + b
    return SequenceSpec("fib", gen)


def naturals_sequence() -> SequenceSpec:
    return SequenceSpec("naturals", lambda: itertools.count(1))


def geomfloor_sequence(theta: Fraction | str) -> SequenceSpec:
    """floor(theta**n) for rational theta > 1, deduplicated to strict increase."""
    theta = Fraction(theta)
    if theta <= 1:
        raise SequenceError(f"geomfloor base must exceed 1, got {theta}")

    def gen() -> Iterator[int]:
        num, den = theta.numerator, theta.denominator
        p, q = 1, 1
        prev = 0
        while True:
            v = p // q
            if v > prev:
                yield v
                prev = v
            p *= num
            q *= den
    return SequenceSpec("geomfloor", gen)


def custom_sequence(terms, name: str = "custom") -> SequenceSpec:
    term_list = [int(t) for t in terms]
    return SequenceSpec(name, lambda: iter(term_list))


def sequence_from_file(path: str) -> SequenceSpec:
    """One positive integer per line, strictly increasing; blank lines skipped."""
    terms: list[int] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                value = int(text)
            except ValueError:
                raise SequenceError(f"{path}:{lineno}: not an integer: {text!r}") from None
            if value <= 0:
                raise SequenceError(f"{path}:{lineno}: term {value} is not positive")
            if terms and value <= terms[-1]:
                raise SequenceError(
                    f"{path}:{lineno}: term {value} does not increase past {terms[-1]}")
            terms.append(value)
    if not terms:
        raise SequenceError(f"{path}: no terms found")
    return custom_sequence(terms, name=f"file:{path}")


SEQUENCE_PRESETS: dict[str, Callable[[], SequenceSpec]] = {
    "pow2": pow2_sequence,
    "factorial": factorial_sequence,
    "fib": fib_sequence,
    "naturals": naturals_sequence,
}


def sequence_preset(spec: str) -> SequenceSpec:
    """Resolve "pow2", "geomfloor:1.1", "file:terms.txt", "custom:1,4,9", ..."""
    name, _, arg = spec.partition(":")
    if name in SEQUENCE_PRESETS:
        if arg:
            raise SequenceError(f"preset {name!r} takes no argument")
        return SEQUENCE_PRESETS[name]()
    if name == "geomfloor":
        if not arg:
            raise SequenceError("geomfloor needs a base, e.g. geomfloor:1.1")
        try:
            return geomfloor_sequence(Fraction(arg))
        except (ValueError, ZeroDivisionError):
            raise SequenceError(f"invalid geomfloor base {arg!r}") from None
    if name == "file":
        if not arg:
            raise SequenceError("file spec needs a path, e.g. file:terms.txt")
        return sequence_from_file(arg)
    if name == "custom":
        if not arg:
            raise SequenceError("custom spec needs terms, e.g. custom:1,4,9")
        try:
            return custom_sequence([int(piece) for piece in arg.split(",")])
        except ValueError:
            raise SequenceError(f"invalid custom terms {arg!r}") from None
    raise SequenceError(
        f"unknown sequence spec {spec!r} (presets: {', '.join(sorted(SEQUENCE_PRESETS))}, "
        "geomfloor:<base>, file:<path>, custom:<comma list>)")


# ---------------------------------------------------------------------------
# Screens
# ---------------------------------------------------------------------------

def representable_set(seq: SequenceSpec, q: int, limit: int,
                      table_budget: int | None = None) -> list[int]:
    """Sorted list of n ≤ limit that are sums of 1..q terms (repeats allowed).

    Computed with bitmask convolution: one big integer holds the indicator
    of the j-representable set, and each round ORs in one more addend.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    if limit < 0:
        raise ValueError("limit must be non-negative")
    budget = budgets.table_budget(table_budget)
    if (limit + 1) * q > budget:
        raise BudgetError(f"representable scan of {(limit + 1) * q} cells "
                          f"exceeds budget {budget}")
    terms = seq.terms_up_to(limit)
    window = (1 << (limit + 1)) - 1
    one_step = 0
    for t in terms:
        one_step |= 1 << t
    reach = one_step
    acc = one_step
    for _ in range(q - 1):
        nxt = 0
        for t in terms:
            nxt |= (reach << t)
        reach = nxt & window
        acc |= reach
    return [n for n in range(1, limit + 1) if (acc >> n) & 1]


@dataclass(frozen=True)
class SparsenessReport:
    """Search result for a wide-gap triple in the q-representable set.

    ``witness`` is the smallest triple (a, b, c) of consecutive
    q-representable numbers (nothing representable strictly between) with
    b − a > M and c − b > M, or None; ``status`` is "found" or
    "inconclusive". Inconclusive means only that the scanned range had no
    such triple.
    """

    sequence: str
    q: int
    M: int
    N: int
    status: str
    witness: tuple[int, int, int] | None

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json_dict(self) -> dict:
        return {
            "sequence": self.sequence,
            "q": self.q,
            "M": self.M,
            "N": self.N,
            "status": self.status,
            "witness": list(self.witness) if self.witness else None,
        }


def check_sparse(seq: SequenceSpec, q: int, M: int, N: int,
                 table_budget: int | None = None) -> SparsenessReport:
    """Scan the q-representable numbers ≤ N for a gap-M triple.

    Deterministic: the scan ascends, so a found witness is the smallest.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    reps = representable_set(seq, q, N, table_budget=table_budget)
    for i in range(len(reps) - 2):
        a, b, c = reps[i], reps[i + 1], reps[i + 2]
        if b - a > M and c - b > M:
            return SparsenessReport(seq.name, q, M, N, "found", (a, b, c))
    return SparsenessReport(seq.name, q, M, N, "inconclusive", None)


@dataclass(frozen=True)
class LoosenessReport:
    """Growth profile of representation counts over n ≤ N.

    ``max_count`` is the largest count seen, at ``argmax`` (smallest such
    n); ``histogram`` maps each observed count to how many n attain it
    (zero included). The verdict compares max_count against the growth
    threshold 4·(q!)²: "growth-detected" above it, "bounded-so-far" at or
    below. The threshold is a deliberately generous multiple of the
    factorial-square ceiling that exact power-of-two counts obey, so
    sequences matching that profile sit well inside it while quadratic-ish
    count growth (naturals: d_n(2) ≥ n/2 − 1) blows past it quickly.

    Convention knobs are recorded in ``mode`` and ``exactly``; with
    (unordered, exactly=False) — the default — counts tally multisets of
    between 1 and q terms. Example values at N=100, q=2: naturals give
    max_count 51 at n=100 by default and 50 with exactly=True (the pairs
    summing to 100), while powers of two give max_count 2 either way.
    """

    sequence: str
    q: int
    N: int
    mode: str
    exactly: bool
    max_count: int
    argmax: int
    histogram: Mapping[int, int]
    threshold: int
    verdict: str

    @property
    def bounded_so_far(self) -> bool:
        return self.verdict == "bounded-so-far"

    def to_json_dict(self) -> dict:
        return {
            "sequence": self.sequence,
            "q": self.q,
            "N": self.N,
            "mode": self.mode,
            "exactly": self.exactly,
            "max_count": self.max_count,
            "argmax": self.argmax,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "threshold": self.threshold,
            "verdict": self.verdict,
        }


def check_loose(seq: SequenceSpec, q: int, N: int, mode: str = "unordered",
                exactly: bool = False, table_budget: int | None = None) -> LoosenessReport:
    """Profile representation counts d_n(q) for 1 ≤ n ≤ N."""
    if q < 1:
        raise ValueError("q must be at least 1")
    if N < 1:
        raise ValueError("N must be at least 1")
    table = RepTable.build(seq, mode, N, q, table_budget=table_budget, name=seq.name)
    rows = [table.row(q)] if exactly else [table.row(j) for j in range(1, q + 1)]
    counts = [sum(row[n] for row in rows) for n in range(N + 1)]

    max_count, argmax = 0, 0
    histogram: dict[int, int] = {}
    for n in range(1, N + 1):
        c = counts[n]
        histogram[c] = histogram.get(c, 0) + 1
        if c > max_count:
            max_count, argmax = c, n
    threshold = 4 * math.factorial(q) ** 2
    verdict = "growth-detected" if max_count > threshold else "bounded-so-far"
    return LoosenessReport(seq.name, q, N, mode, exactly,
                           max_count, argmax, histogram, threshold, verdict)


@dataclass(frozen=True)
class ClassificationReport:
    """Joint sparseness/looseness screen for q = 1..q_max."""

    sequence: str
    q_max: int
    N: int
    M: int
    sparse: Mapping[int, SparsenessReport]
    loose: Mapping[int, LoosenessReport]
    note: str

    def to_json_dict(self) -> dict:
        return {
            "sequence": self.sequence,
            "q_max": self.q_max,
            "N": self.N,
            "M": self.M,
            "per_q": {
                str(q): {
                    "sparse": self.sparse[q].to_json_dict(),
                    "loose": self.loose[q].to_json_dict(),
                }
                for q in sorted(self.sparse)
            },
            "note": self.note,
        }


def classify(seq: SequenceSpec, q_max: int, N: int, M: int,
             mode: str = "unordered", exactly: bool = False,
             table_budget: int | None = None) -> ClassificationReport:
    """Run both screens for every q up to q_max and bundle the verdicts."""
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    sparse: dict[int, SparsenessReport] = {}
    loose: dict[int, LoosenessReport] = {}
    for q in range(1, q_max + 1):
        sparse[q] = check_sparse(seq, q, M, N, table_budget=table_budget)
        loose[q] = check_loose(seq, q, N, mode=mode, exactly=exactly,
                               table_budget=table_budget)
    return ClassificationReport(seq.name, q_max, N, M, sparse, loose, DESK_SCALE_NOTE)
