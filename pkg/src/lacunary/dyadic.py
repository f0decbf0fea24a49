"""Exact dyadic arithmetic: numbers m * 2**-e and closed intervals over them.

Every operation here is exact; nothing rounds. A value is stored fully
reduced: the mantissa is odd whenever the exponent is positive, zero is
``(0, 0)``, and integers keep exponent 0. Reduction makes the representation
unique per value, so structural equality and hashing coincide with value
equality.

Intervals are closed, combine endpoints exactly, and products take the
min/max over the four endpoint pairings, so enclosures only ever widen
through genuine dependency, never through rounding. All values are
immutable and every function is pure, which makes concurrent use safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "DyadicNumber",
    "DyadicInterval",
    "frac_part_interval",
    "ZERO",
    "ONE",
    "HALF",
]


def _reduced(mantissa: int, exponent: int) -> tuple[int, int]:
    if exponent < 0:
        raise ValueError(f"exponent must be non-negative, got {exponent}")
    if mantissa == 0:
        return 0, 0
    if exponent and mantissa % 2 == 0:
        trailing = (mantissa & -mantissa).bit_length() - 1
        shift = min(trailing, exponent)
        mantissa >>= shift
        exponent -= shift
    return mantissa, exponent


@dataclass(frozen=True)
class DyadicNumber:
    """The exact rational mantissa * 2**-exponent, exponent >= 0."""

    mantissa: int = 0
    exponent: int = 0

    def __post_init__(self):
        m, e = _reduced(self.mantissa, self.exponent)
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def from_int(cls, value: int) -> "DyadicNumber":
        return cls(value, 0)

    @classmethod
    def pow2(cls, k: int) -> "DyadicNumber":
        """2**k for any integer k."""
        if k >= 0:
            return cls(1 << k, 0)
        return cls(1, -k)

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    # -- exact arithmetic -------------------------------------------------

    def __add__(self, other: "DyadicNumber | int") -> "DyadicNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = max(self.exponent, other.exponent)
        m = (self.mantissa << (e - self.exponent)) + (other.mantissa << (e - other.exponent))
        return DyadicNumber(m, e)

    __radd__ = __add__

    def __neg__(self) -> "DyadicNumber":
        return DyadicNumber(-self.mantissa, self.exponent)

    def __sub__(self, other: "DyadicNumber | int") -> "DyadicNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "DyadicNumber | int") -> "DyadicNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: "DyadicNumber | int") -> "DyadicNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DyadicNumber(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __abs__(self) -> "DyadicNumber":
        return DyadicNumber(abs(self.mantissa), self.exponent)

    def scale_pow2(self, k: int) -> "DyadicNumber":
        """Exact product with 2**k."""
        e = self.exponent - k
        if e >= 0:
            return DyadicNumber(self.mantissa, e)
        return DyadicNumber(self.mantissa << (-e), 0)

    def floor(self) -> int:
        # Arithmetic right shift floors for negative mantissas as well.
        return self.mantissa >> self.exponent

    # -- comparisons ------------------------------------------------------

    def _aligned(self, other: "DyadicNumber") -> tuple[int, int]:
        e = max(self.exponent, other.exponent)
        return (self.mantissa << (e - self.exponent),
                other.mantissa << (e - other.exponent))

    def __lt__(self, other: "DyadicNumber | int") -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return a < b

    def __le__(self, other: "DyadicNumber | int") -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return a <= b

    def __gt__(self, other: "DyadicNumber | int") -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return a > b

    def __ge__(self, other: "DyadicNumber | int") -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return a >= b

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = DyadicNumber(other)
        if not isinstance(other, DyadicNumber):
            return NotImplemented
        return self.mantissa == other.mantissa and self.exponent == other.exponent

    def __hash__(self) -> int:
        return hash((self.mantissa, self.exponent))

    # -- conversions ------------------------------------------------------

    def as_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.exponent)

    def to_decimal_string(self) -> str:
        """Exact decimal rendering (every dyadic has a finite one)."""
        if self.exponent == 0:
            return str(self.mantissa)
        scaled = self.mantissa * 5 ** self.exponent  # value = scaled * 10**-e
        sign = "-" if scaled < 0 else ""
        text = str(abs(scaled)).rjust(self.exponent + 1, "0")
        return f"{sign}{text[:-self.exponent]}.{text[-self.exponent:]}"

    def __str__(self) -> str:
        return self.to_decimal_string()

    def to_json_dict(self) -> dict:
        # Mantissas can exceed what consumers parse as native ints; keep a string.
        return {"mantissa": str(self.mantissa), "exponent": self.exponent}

    @classmethod
    def from_json_dict(cls, data: dict) -> "DyadicNumber":
        return cls(int(data["mantissa"]), int(data["exponent"]))


def _coerce(value):
    if isinstance(value, DyadicNumber):
        return value
    if isinstance(value, int):
        return DyadicNumber(value)
    return NotImplemented


ZERO = DyadicNumber(0)
ONE = DyadicNumber(1)
HALF = DyadicNumber(1, 1)


@dataclass(frozen=True)
class DyadicInterval:
    """Closed interval [lower, upper] with exact dyadic endpoints."""

    lower: DyadicNumber
    upper: DyadicNumber

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"interval endpoints out of order: {self.lower} > {self.upper}")

    @classmethod
    def point(cls, value: DyadicNumber | int) -> "DyadicInterval":
        v = _coerce(value)
        return cls(v, v)

    @property
    def width(self) -> DyadicNumber:
        return self.upper - self.lower

    def contains(self, value: DyadicNumber | int) -> bool:
        v = _coerce(value)
        return self.lower <= v <= self.upper

    @property
    def contains_zero(self) -> bool:
        return self.lower <= ZERO <= self.upper

    def intersects(self, other: "DyadicInterval") -> bool:
        return not (self.upper < other.lower or other.upper < self.lower)

    def __add__(self, other: "DyadicInterval | DyadicNumber | int") -> "DyadicInterval":
        if isinstance(other, DyadicInterval):
            return DyadicInterval(self.lower + other.lower, self.upper + other.upper)
        v = _coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return DyadicInterval(self.lower + v, self.upper + v)

    __radd__ = __add__

    def __neg__(self) -> "DyadicInterval":
        return DyadicInterval(-self.upper, -self.lower)

    def __sub__(self, other: "DyadicInterval | DyadicNumber | int") -> "DyadicInterval":
        if isinstance(other, DyadicInterval):
            return self + (-other)
        v = _coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self + (-v)

    def __mul__(self, other: "DyadicInterval | DyadicNumber | int") -> "DyadicInterval":
        if not isinstance(other, DyadicInterval):
            v = _coerce(other)
            if v is NotImplemented:
                return NotImplemented
            other = DyadicInterval.point(v)
        products = [self.lower * other.lower, self.lower * other.upper,
                    self.upper * other.lower, self.upper * other.upper]
        return DyadicInterval(min(products), max(products))

    __rmul__ = __mul__

    def scale_pow2(self, k: int) -> "DyadicInterval":
        # 2**k > 0, so scaling preserves endpoint order.
        return DyadicInterval(self.lower.scale_pow2(k), self.upper.scale_pow2(k))

    def to_json_dict(self) -> dict:
        return {"lower": self.lower.to_json_dict(), "upper": self.upper.to_json_dict()}

    @classmethod
    def from_json_dict(cls, data: dict) -> "DyadicInterval":
        return cls(DyadicNumber.from_json_dict(data["lower"]),
                   DyadicNumber.from_json_dict(data["upper"]))

    def __str__(self) -> str:
        return f"[{self.lower}, {self.upper}]"


def frac_part_interval(x: DyadicInterval) -> DyadicInterval | None:
    """Enclose {v} for v in x, under the convention {v} in [0, 1).

    Returns the exact image interval when x fits inside a single unit cell
    [n, n+1); there the map is v - n and the result lies in [0, 1). When x
    spans a cell boundary the image wraps around and is not an interval, so
    the caller gets ``None`` (a straddle) and must refine its enclosure.
    Straddling is a value, not an error: it reports "not decidable at this
    width", which downstream certificate checks treat as a rejection.
    """
    n = x.lower.floor()
    if x.upper - n < ONE:
        return DyadicInterval(x.lower - n, x.upper - n)
    return None
