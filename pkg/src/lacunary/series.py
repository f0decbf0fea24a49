"""Lacunary series: exact partial sums, certified tail bounds, digit output.

A series is sum(b_n * radix**(-a_n)) over a nondecreasing exponent stream
a_0 <= a_1 <= ... and integer coefficients b_n. The built-in presets:

    mahler      a_n = 2**n, b_n = 1          (the constant often written mu)
    liouville   a_n = n!,   b_n = 1          (note a_0 = a_1 = 1)
    nu10        a_n = 2**n, b_n = 1, radix 10
    fib         a_n = Fibonacci (1, 1, 2, 3, 5, ...), b_n = 1
    geom2       a_n = n,    b_n = 1          (sums to exactly 2)
    nmahler     a_n = 2**n, b_n = n          (unbounded coefficients)

Canonicalization merges equal-exponent runs by adding their coefficients,
after which exponents are strictly increasing. The Liouville preset needs
this: its two leading 2**-1 terms merge into a single coefficient 2.

Tail bounds rest on a declared *tail envelope*: a function env(N, a_N) that
promises

    sum_{j >= N} |b_j| * 2**(-a_j)  <=  env(N, a_N) * 2**(1 - a_N).

For constant-bounded coefficients over strictly increasing exponents the
constant bound B satisfies this (the exponents step by at least 1, so the
tail is dominated by a geometric series). Presets whose canonical form has
a lone oversized merged coefficient (liouville, fib) declare the sharper
per-index envelope 2-then-1, and the nmahler preset declares env = N + 1,
which absorbs its linear coefficient growth. Envelopes keep enclosures
sound without giving up the tight bounds the per-preset structure allows.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from . import budgets
from .dyadic import DyadicInterval, DyadicNumber
from .errors import BudgetError, PrecisionError, SeriesError

__all__ = [
    "SeriesSpec",
    "DigitExpansion",
    "partial_sum",
    "tail_bound",
    "eval_interval",
    "digits",
    "mahler_series",
    "liouville_series",
    "nu10_series",
    "fib_series",
    "geom2_series",
    "nmahler_series",
    "geomfloor_series",
    "custom_series",
    "series_from_file",
    "series_preset",
    "SERIES_PRESETS",
]


class SeriesSpec:
    """A formal series sum(b_n * radix**(-a_n)) with declared bounds.

    ``exponents`` and ``coefficients`` are restartable generator factories;
    ``coefficients=None`` means the all-ones stream. ``coeff_bound`` is the
    declared sup of |b_n| (``None`` for unbounded streams), checked on every
    materialized term. ``tail_envelope(index, exponent)`` overrides the
    constant-bound tail estimate, see the module docstring for its contract.

    Instances are immutable after construction and materialize terms fresh
    on each request, so they are safe to share across threads.
    """

    def __init__(self, name: str,
                 exponents: Callable[[], Iterator[int]],
                 coefficients: Callable[[], Iterator[int]] | None = None,
                 coeff_bound: int | None = 1,
                 radix: int = 2,
                 canonicalized: bool = False,
                 tail_envelope: Callable[[int, int], int] | None = None,
                 canonical_factory: Callable[[], "SeriesSpec"] | None = None):
        if radix not in (2, 10):
            raise SeriesError(f"radix must be 2 or 10, got {radix}")
        if coeff_bound is not None and coeff_bound < 0:
            raise SeriesError("declared coefficient bound must be non-negative")
        self.name = name
        self.radix = radix
        self.coeff_bound = coeff_bound
        self.canonicalized = canonicalized
        self._exponents = exponents
        self._coefficients = coefficients
        self._tail_envelope = tail_envelope
        self._canonical_factory = canonical_factory

    def __repr__(self) -> str:
        return f"SeriesSpec({self.name!r}, radix={self.radix}, canonicalized={self.canonicalized})"

    def _stream(self) -> Iterator[tuple[int, int]]:
        exps = self._exponents()
        coeffs = self._coefficients() if self._coefficients is not None else itertools.repeat(1)
        prev = None
        for a, b in zip(exps, coeffs):
            a = int(a)
            b = int(b)
            if a < 0:
                raise SeriesError(f"exponent {a} is negative")
            if prev is not None:
                if self.canonicalized and a <= prev:
                    raise SeriesError(f"canonical exponents must strictly increase: {prev} then {a}")
                if a < prev:
                    raise SeriesError(f"exponents must be nondecreasing: {prev} then {a}")
            if self.coeff_bound is not None and abs(b) > self.coeff_bound:
                raise SeriesError(f"coefficient {b} exceeds declared bound {self.coeff_bound}")
            prev = a
            yield a, b

    def terms(self, count: int) -> list[tuple[int, int]]:
        """First ``count`` (exponent, coefficient) pairs; fewer if finite."""
        if count < 0:
            raise ValueError("count must be non-negative")
        return list(itertools.islice(self._stream(), count))

    def terms_until_exponent(self, threshold: int) -> tuple[list[tuple[int, int]], bool]:
        """Terms with exponent below ``threshold`` plus the first at or above.

        Returns (terms, exhausted). When not exhausted, the last entry is the
        first term whose exponent reaches the threshold, which is exactly the
        tail cut needed by the enclosure routines.
        """
        out: list[tuple[int, int]] = []
        for a, b in self._stream():
            out.append((a, b))
            if a >= threshold:
                return out, False
        return out, True

    def tail_coeff_bound(self, index: int, exponent: int) -> int:
        """Envelope value for the tail starting at ``index`` (exponent a_N)."""
        if self._tail_envelope is not None:
            return self._tail_envelope(index, exponent)
        if self.coeff_bound is None:
            raise SeriesError(f"series {self.name!r} declares no coefficient bound "
                              "and no tail envelope; tails cannot be certified")
        return self.coeff_bound

    def canonicalize(self) -> "SeriesSpec":
        """Equivalent series with strictly increasing exponents.

        Already-canonical specs return themselves. Presets with duplicate
        exponents supply a prebuilt canonical twin. Anything else must be
        finite: it is materialized, merged exactly, and given the exact
        suffix-maximum envelope. An infinite stream without a declared
        canonical form cannot be tail-certified, so it is refused.
        """
        if self.canonicalized:
            return self
        if self._canonical_factory is not None:
            return self._canonical_factory()
        pairs = list(itertools.islice(self._stream(), _FINITE_SCAN_CAP + 1))
        if len(pairs) > _FINITE_SCAN_CAP:
            raise SeriesError(f"series {self.name!r} is not finite and declares no "
                              "canonical form; cannot canonicalize")
        merged = _merge_pairs(pairs)
        return _finite_canonical(self.name, merged, self.radix)


_FINITE_SCAN_CAP = 1 << 16


def _merge_pairs(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    merged: list[tuple[int, int]] = []
    for a, b in pairs:
        if merged and merged[-1][0] == a:
            merged[-1] = (a, merged[-1][1] + b)
        else:
            merged.append((a, b))
    return merged


def _finite_canonical(name: str, merged: list[tuple[int, int]], radix: int) -> SeriesSpec:
    coeffs = [b for _, b in merged]
    # Exact envelope: suffix maxima of |b_j| (0 past the end of the list).
    suffix = [0] * (len(coeffs) + 1)
    for j in range(len(coeffs) - 1, -1, -1):
        suffix[j] = max(abs(coeffs[j]), suffix[j + 1])
    bound = suffix[0]
    return SeriesSpec(
        name,
        exponents=lambda: iter([a for a, _ in merged]),
        coefficients=lambda: iter(coeffs),
        coeff_bound=bound,
        radix=radix,
        canonicalized=True,
        tail_envelope=lambda j, _a: suffix[j] if j < len(suffix) else 0,
    )


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def _pow2_exponents() -> Iterator[int]:
    n = 1
    while True:
        yield n
        n <<= 1


def _factorials() -> Iterator[int]:
    value, n = 1, 1
    while True:
        yield value
        value *= n
        n += 1


def _fib_raw() -> Iterator[int]:
    a, b = 1, 1
    while True:
        yield a
        a, b = b, a + b


def _merged_stream(raw: Callable[[], Iterator[int]]) -> Callable[[], Iterator[tuple[int, int]]]:
    def run() -> Iterator[tuple[int, int]]:
        pending: list[int] | None = None
        for a in raw():
            if pending is None:
                pending = [a, 1]
            elif a == pending[0]:
                pending[1] += 1
            else:
                yield pending[0], pending[1]
                pending = [a, 1]
        if pending is not None:
            yield pending[0], pending[1]
    return run


def _split_factory(pairs: Callable[[], Iterator[tuple[int, int]]], pick: int) -> Callable[[], Iterator[int]]:
    return lambda: (pair[pick] for pair in pairs())


def mahler_series() -> SeriesSpec:
    return SeriesSpec("mahler", _pow2_exponents, canonicalized=True)


def nu10_series() -> SeriesSpec:
    return SeriesSpec("nu10", _pow2_exponents, radix=10, canonicalized=True)


def _one_merged_head_canonical(name: str, raw: Callable[[], Iterator[int]]) -> SeriesSpec:
    # Exactly the two leading equal exponents merge; every later |b_j| is 1.
    pairs = _merged_stream(raw)
    return SeriesSpec(
        name,
        exponents=_split_factory(pairs, 0),
        coefficients=_split_factory(pairs, 1),
        coeff_bound=2,
        canonicalized=True,
        tail_envelope=lambda j, _a: 2 if j == 0 else 1,
    )


def liouville_series() -> SeriesSpec:
    return SeriesSpec(
        "liouville", _factorials,
        canonical_factory=lambda: _one_merged_head_canonical("liouville", _factorials),
    )


def fib_series() -> SeriesSpec:
    return SeriesSpec(
        "fib", _fib_raw,
        canonical_factory=lambda: _one_merged_head_canonical("fib", _fib_raw),
    )


def geom2_series() -> SeriesSpec:
    return SeriesSpec("geom2", lambda: itertools.count(0), canonicalized=True)


def nmahler_series() -> SeriesSpec:
    # sum(n * 2**-(2**n)): coefficients are unbounded, but the doubly
    # exponential gaps absorb them: sum_{j>=N} j 2**-(2**j) <= (N+1) 2**(1-2**N)
    # (the ratio of consecutive terms is at most 1/2 from j = 1 on).
    return SeriesSpec(
        "nmahler", _pow2_exponents,
        coefficients=lambda: itertools.count(0),
        coeff_bound=None,
        canonicalized=True,
        tail_envelope=lambda j, _a: j + 1,
    )


def geomfloor_series(theta: Fraction | str) -> SeriesSpec:
    """Exponents floor(theta**n) for rational theta > 1.

    Small bases repeat many floors before the stream starts climbing, so the
    raw spec is not canonical; its canonical twin merges the runs, and the
    envelope bounds every tail coefficient by the number of n packed into a
    single unit window [k, k+1), which only shrinks as k grows.
    """
    theta = Fraction(theta)
    if theta <= 1:
        raise SeriesError(f"geomfloor base must exceed 1, got {theta}")

    def raw() -> Iterator[int]:
        num, den = theta.numerator, theta.denominator
        p, q = 1, 1
        while True:
            yield p // q
            p *= num
            q *= den

    def window_multiplicity(k: int) -> int:
        # Largest M with theta**(M-1) < (k+1)/k bounds how many floors equal
        # any value >= k.
        if k <= 0:
            k = 1
        target = Fraction(k + 1, k)
        power = theta
        m = 1
        while power < target:
            power *= theta
            m += 1
        return m

    def canonical() -> SeriesSpec:
        pairs = _merged_stream(raw)
        return SeriesSpec(
            "geomfloor", _split_factory(pairs, 0), _split_factory(pairs, 1),
            coeff_bound=None, canonicalized=True,
            tail_envelope=lambda _j, a: window_multiplicity(a),
        )

    return SeriesSpec("geomfloor", raw, canonical_factory=canonical)


def custom_series(pairs: Iterable[tuple[int, int]] | None = None,
                  exponents: Iterable[int] | None = None,
                  coefficients: Iterable[int] | None = None,
                  name: str = "custom") -> SeriesSpec:
    """Finite series from explicit terms; the coefficient bound is computed."""
    if pairs is not None:
        term_list = [(int(a), int(b)) for a, b in pairs]
    else:
        if exponents is None:
            raise SeriesError("custom series needs terms")
        exp_list = [int(a) for a in exponents]
        coeff_list = ([int(b) for b in coefficients] if coefficients is not None
                      else [1] * len(exp_list))
        if len(coeff_list) != len(exp_list):
            raise SeriesError("coefficient list length does not match exponents")
        term_list = list(zip(exp_list, coeff_list))
    bound = max((abs(b) for _, b in term_list), default=0)
    return SeriesSpec(
        name,
        exponents=lambda: iter([a for a, _ in term_list]),
        coefficients=lambda: iter([b for _, b in term_list]),
        coeff_bound=bound,
    )


def series_from_file(path: str) -> SeriesSpec:
    """Exponent list, one non-negative integer per line, all-ones coefficients."""
    exps: list[int] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                value = int(text)
            except ValueError:
                raise SeriesError(f"{path}:{lineno}: not an integer: {text!r}") from None
            if value < 0:
                raise SeriesError(f"{path}:{lineno}: exponent {value} is negative")
            if exps and value < exps[-1]:
                raise SeriesError(f"{path}:{lineno}: exponent {value} decreases below {exps[-1]}")
            exps.append(value)
    if not exps:
        raise SeriesError(f"{path}: no exponents found")
    return custom_series(exponents=exps, name=f"file:{path}")


SERIES_PRESETS: dict[str, Callable[[], SeriesSpec]] = {
    "mahler": mahler_series,
    "liouville": liouville_series,
    "nu10": nu10_series,
    "fib": fib_series,
    "geom2": geom2_series,
    "nmahler": nmahler_series,
}


def series_preset(spec: str) -> SeriesSpec:
    """Resolve "mahler", "geomfloor:1.1", "file:path.txt", and friends."""
    name, _, arg = spec.partition(":")
    if name in SERIES_PRESETS:
        if arg:
            raise SeriesError(f"preset {name!r} takes no argument")
        return SERIES_PRESETS[name]()
    if name == "geomfloor":
        if not arg:
            raise SeriesError("geomfloor needs a base, e.g. geomfloor:1.1")
        try:
            return geomfloor_series(Fraction(arg))
        except (ValueError, ZeroDivisionError):
            raise SeriesError(f"invalid geomfloor base {arg!r}") from None
    if name == "file":
        if not arg:
            raise SeriesError("file spec needs a path, e.g. file:exponents.txt")
        return series_from_file(arg)
    raise SeriesError(f"unknown series spec {spec!r} "
                      f"(presets: {', '.join(sorted(SERIES_PRESETS))}, geomfloor:<base>, file:<path>)")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _require_dyadic(series: SeriesSpec) -> None:
    if series.radix != 2:
        raise SeriesError(f"series {series.name!r} has radix {series.radix}; "
                          "dyadic evaluation needs radix 2")


def partial_sum(series: SeriesSpec, count: int, exponent_budget: int | None = None) -> DyadicNumber:
    """Exact sum of the first ``count`` terms (fewer if the series ends)."""
    _require_dyadic(series)
    budget = budgets.exponent_budget(exponent_budget)
    terms = series.terms(count)
    if not terms:
        return DyadicNumber(0)
    top = terms[-1][0]
    if top > budget:
        raise BudgetError(f"series exponent {top} exceeds budget {budget}")
    mantissa = 0
    for a, b in terms:
        mantissa += b << (top - a)
    return DyadicNumber(mantissa, top)


def tail_bound(series: SeriesSpec, count: int) -> DyadicNumber:
    """Certified bound on |sum of terms from index ``count`` on|.

    Uses the declared tail envelope at the first omitted exponent a_N; the
    result is env * 2**(1 - a_N). Requires a canonical series so the
    geometric-domination argument behind the envelope applies. Exhausted
    finite series get an exact 0.
    """
    _require_dyadic(series)
    if not series.canonicalized:
        raise SeriesError("tail_bound needs a canonicalized series")
    terms = series.terms(count + 1)
    if len(terms) <= count:
        return DyadicNumber(0)
    a_next = terms[count][0]
    env = series.tail_coeff_bound(count, a_next)
    if env < 0:
        raise SeriesError("tail envelope returned a negative bound")
    return DyadicNumber(env).scale_pow2(1 - a_next)


def eval_interval(series: SeriesSpec, count: int, exponent_budget: int | None = None) -> DyadicInterval:
    """Enclosure [S - T, S + T] of the full series value at ``count`` terms."""
    _require_dyadic(series)
    if not series.canonicalized:
        raise SeriesError("eval_interval needs a canonicalized series")
    s = partial_sum(series, count, exponent_budget)
    t = tail_bound(series, count)
    return DyadicInterval(s - t, s + t)


# ---------------------------------------------------------------------------
# Digit extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DigitExpansion:
    """Exact leading digits: value = sign * (integer_part . digits) in ``base``."""

    sign: int
    integer_part: int
    digits: str
    base: int

    def __str__(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}{self.integer_part}.{self.digits} (base {self.base})"


def _balanced_sum(terms: list[tuple[int, int]], radix: int) -> tuple[int, int]:
    """(mantissa, top) with Σ b·radix^(−a) = mantissa·radix^(−top).

    Pairwise merging keeps intermediate mantissas short, so dense exponent
    streams (a_n = n up to the budget) cost O(total bits · log n) instead of
    the quadratic bill a straight left fold would run up.
    """
    if not terms:
        return 0, 0
    if len(terms) == 1:
        a, b = terms[0]
        return b, a
    mid = len(terms) // 2
    m1, t1 = _balanced_sum(terms[:mid], radix)
    m2, t2 = _balanced_sum(terms[mid:], radix)
    if t1 < t2:
        m1, t1, m2, t2 = m2, t2, m1, t1
    shift = t1 - t2
    if radix == 2:
        return m1 + (m2 << shift), t1
    return m1 + m2 * radix ** shift, t1


def _series_bounds(series: SeriesSpec, threshold: int) -> tuple[Fraction, Fraction]:
    """Exact rational bounds on the series value, cutting at ``threshold``."""
    terms, exhausted = series.terms_until_exponent(threshold)
    radix = series.radix
    if exhausted:
        included = terms
        tail = Fraction(0)
    else:
        included = terms[:-1]
        cut_index = len(terms) - 1
        cut_exp = terms[-1][0]
        env = series.tail_coeff_bound(cut_index, cut_exp)
        # The envelope certifies the tail at the cut exponent; relaxing it to
        # the (smaller) threshold stays sound and avoids gigantic denominators
        # when the next exponent jumps far past the threshold.
        exp = min(cut_exp, threshold)
        if radix == 2:
            tail = Fraction(2 * env, 1 << exp)
        else:
            tail = Fraction(10 * env, 9 * 10 ** exp)
    mantissa, top = _balanced_sum(included, radix)
    total = Fraction(mantissa, (1 << top) if radix == 2 else radix ** top)
    return total - tail, total + tail


def _extract_digits(lo: Fraction, hi: Fraction, base: int, count: int) -> DigitExpansion | None:
    sign = 1
    if hi < 0:
        lo, hi, sign = -hi, -lo, -1
    elif lo < 0:
        return None  # sign unresolved; refine
    scale = base ** count
    a = math.floor(lo * scale)
    b = math.floor(hi * scale)
    if a != b:
        return None
    integer, frac = divmod(a, scale)
    return DigitExpansion(sign, integer, _render(frac, base, count), base)


def _render(value: int, base: int, count: int) -> str:
    if base == 10:
        return str(value).rjust(count, "0")
    return format(value, "b").rjust(count, "0")


def _achieved_prefix(lo: Fraction, hi: Fraction, base: int, count: int) -> tuple[int | None, int | None, str]:
    """Longest digit prefix both bounds agree on (for precision errors)."""
    if hi < 0:
        lo, hi, sign = -hi, -lo, -1
    elif lo >= 0:
        sign = 1
    else:
        return None, None, ""
    for c in range(count - 1, -1, -1):
        scale = base ** c
        a = math.floor(lo * scale)
        if a == math.floor(hi * scale):
            return sign, a // scale, _render(a % scale, base, c) if c else ""
    return sign, None, ""


def digits(series: SeriesSpec, base: int, count: int,
           exponent_budget: int | None = None) -> DigitExpansion:
    """First ``count`` digits after the radix point, exact, never rounded.

    The series is enclosed between exact rational bounds and the cut is
    refined geometrically until both bounds agree on every requested digit.
    Values that sit exactly on a digit boundary (possible only for rational
    series values) can never be separated; the refinement cap turns that
    into a :class:`PrecisionError` carrying the digits that did settle.

    Radix-10 series can only be rendered in base 10; radix-2 series render
    in either base via exact multiplication by powers of the base.
    """
    if base not in (2, 10):
        raise ValueError(f"base must be 2 or 10, got {base}")
    if count < 1:
        raise ValueError("count must be at least 1")
    if series.radix == 10 and base != 10:
        raise SeriesError("a radix-10 series only renders base-10 digits")
    ser = series if series.canonicalized else series.canonicalize()
    budget = budgets.exponent_budget(exponent_budget)

    bits_per_digit = 1 if base == 2 else 4
    threshold = min(count * bits_per_digit + 16, budget)
    while True:
        lo, hi = _series_bounds(ser, threshold)
        result = _extract_digits(lo, hi, base, count)
        if result is not None:
            return result
        if threshold >= budget:
            sign, integer, prefix = _achieved_prefix(lo, hi, base, count)
            raise PrecisionError(
                f"{count} base-{base} digits of {ser.name!r} not resolved within "
                f"exponent budget {budget} ({len(prefix)} digits settled)",
                achieved_prefix=prefix, integer_part=integer, sign=sign)
        threshold = min(threshold * 2, budget)
