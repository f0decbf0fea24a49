"""Integer polynomials with exact evaluation over dyadic numbers and intervals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .dyadic import DyadicInterval, DyadicNumber
from .errors import PolynomialError

__all__ = ["IntPolynomial", "parse_polynomial", "eval_poly_interval"]


@dataclass(frozen=True)
class IntPolynomial:
    """f(x) = a_0 + a_1 x + ... + a_t x**t with integer a_q, a_t != 0, t >= 1.

    Coefficients are stored in ascending order of degree. The command-line
    flag format is the opposite, leading coefficient first, mirroring how
    polynomials are written; use :meth:`from_leading` for that order.
    """

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if len(coeffs) < 2:
            raise PolynomialError("degree must be at least 1")
        if coeffs[-1] == 0:
            raise PolynomialError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_leading(cls, leading_first: Iterable[int]) -> "IntPolynomial":
        return cls(tuple(reversed(tuple(leading_first))))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    def leading_first(self) -> tuple[int, ...]:
        return tuple(reversed(self.coefficients))

    def evaluate(self, x: DyadicNumber | int) -> DyadicNumber:
        """Exact Horner evaluation at a dyadic point."""
        if isinstance(x, int):
            x = DyadicNumber(x)
        acc = DyadicNumber(self.coefficients[-1])
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        parts: list[str] = []
        for q in range(self.degree, -1, -1):
            a = self.coefficients[q]
            if a == 0:
                continue
            mag = abs(a)
            if q == 0:
                body = str(mag)
            elif q == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{q}" if mag == 1 else f"{mag}*x^{q}"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if a > 0 else f"- {body}")
        return " ".join(parts)


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse the CLI coefficient list "a_t,...,a_0" (leading first)."""
    pieces = [p.strip() for p in text.split(",")]
    if any(not p for p in pieces):
        raise PolynomialError(f"empty coefficient in {text!r}")
    try:
        values = [int(p) for p in pieces]
    except ValueError as exc:
        raise PolynomialError(f"non-integer coefficient in {text!r}: {exc}") from None
    return IntPolynomial.from_leading(values)


def eval_poly_interval(poly: IntPolynomial, x: DyadicInterval) -> DyadicInterval:
    """Interval Horner evaluation; encloses f(v) for every v in x.

    Each step combines exact interval products and sums, so the only
    widening comes from interval dependency, which is conservative and
    therefore safe for certificates.
    """
    acc = DyadicInterval.point(poly.coefficients[-1])
    for c in reversed(poly.coefficients[:-1]):
        acc = acc * x + c
    return acc
