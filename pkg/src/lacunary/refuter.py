"""Non-vanishing certificates for integer polynomials at lacunary values.

Write mu = sum(2**-(2**n)) and lambda = sum(2**-(n!)). For an integer
polynomial f of degree t >= 1, expanding f(mu) digit-wise gives

    f(mu) = sum_n d_n * 2**(-n),      d_n = sum_q a_q * d_n(q),

with d_n(q) the ordered power-of-two representation counts from
:mod:`lacunary.repcount`. The counts obey d_n(q) <= (q!)^2, so |d_n| <= D
:= sum |a_q| (q!)^2. Around the positions

    k = 2**(t+p),   m = 2**p * (2**t - 1),   s = m - 2**(p-1)

every d_n with s < n < k vanishes except d_m = a_t * t!  (each such n has
more than t binary ones, while m and s are the two largest numbers below k
with exactly t ones). Multiplying by 2**s isolates that digit block: for p
large enough the fractional part of 2**s * f(mu) is squeezed between 0 and
1/2 by the two inequalities

    (1)  D * 2**(s+1-k)  <  |d_m| * 2**(s-m)          (tail below main)
    (2)  |d_m| * 2**(s-m) + D * 2**(s+1-k)  <  1/2    (all below one half)

so it cannot be an integer, and f(mu) != 0. A MahlerCertificate records
the positions and bounds; :func:`verify_certificate` re-derives the
conclusion by straight interval arithmetic, sharing no counting code with
the construction.

For lambda the route is direct interval evaluation, decorated with the two
classical side conditions (f(lambda_s) is a dyadic with denominator at
most 2**(t*s!), and lambda - lambda_s < 2*2**(-(s+1)!)) checked exactly.

:func:`generalized_witness` replays the digit-isolation idea over any
canonical radix-2 series by scanning actual weighted digit coefficients
for an isolated nonzero surrounded by wide zero gaps. The scan's gap
thresholds are heuristic; soundness comes from the same independent
interval verification, and "inconclusive" is always preferred over an
unsound certificate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from . import budgets
from .dyadic import (HALF, ONE, ZERO, DyadicInterval, DyadicNumber,
                     frac_part_interval)
from .errors import BudgetError, CertificateError
from .polynomial import IntPolynomial, eval_poly_interval
from .repcount import dnq_pow2, weighted_digit_row
from .series import (SeriesSpec, eval_interval, liouville_series,
                     mahler_series, partial_sum, tail_bound)

__all__ = [
    "coeff_bound_D",
    "choose_p",
    "MahlerCertificate",
    "mahler_witness",
    "VerificationResult",
    "verify_certificate",
    "PedagogyEntry",
    "LiouvilleCertificate",
    "liouville_nonvanishing",
    "GeneralizedReport",
    "generalized_witness",
    "enumerate_polynomials",
]

VERDICT_CERTIFIED = "nonzero-certified"
VERDICT_INCONCLUSIVE = "inconclusive"

DEFAULT_GUARD_BITS = 8
DEFAULT_HORIZON = 1024


def coeff_bound_D(poly: IntPolynomial) -> int:
    """D = sum |a_q| (q!)^2, a bound on every digit coefficient |d_n|."""
    total = 0
    fact = 1
    for q, a in enumerate(poly.coefficients):
        if q:
            fact *= q
        total += abs(a) * fact * fact
    return total


def choose_p(poly: IntPolynomial) -> int:
    """Smallest p >= 1 making both certificate inequalities hold.

    With A = |a_t| * t! and D = coeff_bound_D, the conditions are

        (i)   D * 2**(1 - 2**p) < A
        (ii)  (A + D * 2**(1 - 2**p)) * 2**(-2**(p-1)) < 1/2

    checked in exact integer form. p grows like log2(log2(A + D)), so the
    cap of 64 is unreachable for any input that fits in memory; hitting it
    means the caller constructed something degenerate.
    """
    t = poly.degree
    A = abs(poly.leading) * math.factorial(t)
    D = coeff_bound_D(poly)
    for p in range(1, budgets.WITNESS_P_CAP + 1):
        block = 1 << p
        half_block = 1 << (p - 1)
        if 2 * D >= (A << block):
            continue
        if (A << block) + 2 * D < (1 << (block + half_block - 1)):
            return p
    raise CertificateError(
        f"no witness parameter p <= {budgets.WITNESS_P_CAP} for {poly}")


def _dyadic_to_json(x: DyadicNumber) -> dict:
    return x.to_json_dict()


def _interval_to_json(x: DyadicInterval) -> dict:
    return x.to_json_dict()


@dataclass(frozen=True)
class MahlerCertificate:
    """Finite record establishing f(mu) != 0 via an isolated digit block.

    ``frac_interval`` encloses the fractional part of 2**s * f(mu); its
    construction guarantees it lies strictly inside (0, 1).
    """

    poly: IntPolynomial
    p: int
    k: int
    m: int
    s: int
    d_m: int
    D: int
    tail_bound: DyadicNumber
    frac_interval: DyadicInterval
    verdict: str = VERDICT_CERTIFIED

    def to_json_dict(self) -> dict:
        return {
            "schema": "lacunary.mahler-certificate/1",
            "poly": list(self.poly.leading_first()),
            "degree": self.poly.degree,
            "p": self.p,
            "k": self.k,
            "m": self.m,
            "s": self.s,
            "d_m": self.d_m,
            "D": self.D,
            "tail_bound": _dyadic_to_json(self.tail_bound),
            "frac_interval": _interval_to_json(self.frac_interval),
            "verdict": self.verdict,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MahlerCertificate":
        if data.get("schema") != "lacunary.mahler-certificate/1":
            raise CertificateError(f"unexpected certificate schema: {data.get('schema')!r}")
        return cls(
            poly=IntPolynomial.from_leading(data["poly"]),
            p=int(data["p"]),
            k=int(data["k"]),
            m=int(data["m"]),
            s=int(data["s"]),
            d_m=int(data["d_m"]),
            D=int(data["D"]),
            tail_bound=DyadicNumber.from_json_dict(data["tail_bound"]),
            frac_interval=DyadicInterval.from_json_dict(data["frac_interval"]),
            verdict=str(data["verdict"]),
        )


def mahler_witness(poly: IntPolynomial) -> MahlerCertificate:
    """Construct the certificate for f(mu) != 0 at the closed-form positions.

    Every structural claim the argument relies on is re-checked here on the
    concrete numbers: the value of d_m, the vanishing of d_n strictly
    between s and k, the popcounts of m and s, and the two inequalities.
    A failure raises :class:`CertificateError` — it would mean a bug, not
    an unlucky input, since the positions force the structure for every
    integer polynomial of degree >= 1.
    """
    t = poly.degree
    p = choose_p(poly)
    k = 1 << (t + p)
    m = (1 << p) * ((1 << t) - 1)
    s = m - (1 << (p - 1))
    D = coeff_bound_D(poly)

    if m.bit_count() != t or s.bit_count() != t:
        raise CertificateError(f"witness positions malformed: m={m}, s={s}, t={t}")

    count_m = dnq_pow2(m, t)
    if count_m != math.factorial(t):
        raise CertificateError(f"d_m({t}) = {count_m} != t! at m={m}")
    d_m = poly.leading * count_m

    coeffs = poly.coefficients
    for n in range(s + 1, k):
        if n == m:
            continue
        d_n = sum(a * dnq_pow2(n, q) for q, a in enumerate(coeffs) if a and q)
        if d_n != 0:
            raise CertificateError(f"digit coefficient d_{n} = {d_n} inside the gap ({s}, {k})")

    main = DyadicNumber(d_m).scale_pow2(s - m)
    tail = DyadicNumber(D).scale_pow2(s + 1 - k)
    if not tail < abs(main):
        raise CertificateError(f"inequality (1) fails: tail {tail} >= |main| {abs(main)}")
    if not abs(main) + tail < HALF:
        raise CertificateError(f"inequality (2) fails: |main| + tail >= 1/2 for {poly}")

    frac = frac_part_interval(DyadicInterval(main - tail, main + tail))
    if frac is None or not (ZERO < frac.lower and frac.upper < ONE):
        raise CertificateError(f"fractional enclosure not isolated from integers for {poly}")
    return MahlerCertificate(poly, p, k, m, s, d_m, D, tail, frac)


@dataclass(frozen=True)
class VerificationResult:
    accepted: bool
    reason: str
    interval: DyadicInterval | None = None

    def to_json_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "reason": self.reason,
            "interval": _interval_to_json(self.interval) if self.interval else None,
        }


def _scaled_frac_enclosure(series: SeriesSpec, poly: IntPolynomial, s: int, k: int,
                           exponent_budget: int | None = None
                           ) -> tuple[DyadicInterval | None, str]:
    """Enclose {2**s * f(series value)} by pure interval arithmetic.

    The series enclosure is refined until its tail is at most 2**-(k+9),
    i.e. width at most 2**-(k+8): eight guard bits beyond the certificate's
    own tail position. Returns (interval, "") or (None, reason) when the
    enclosure straddles an integer or the budget refuses the precision.
    """
    target = DyadicNumber.pow2(-(k + 9))
    count = 0
    while True:
        t = tail_bound(series, count)
        if not target < t:
            break
        count += 1
    try:
        x = eval_interval(series, count, exponent_budget)
    except BudgetError as exc:
        return None, f"exponent budget too small for verification: {exc}"
    z = eval_poly_interval(poly, x).scale_pow2(s)
    w = frac_part_interval(z)
    if w is None:
        return None, "scaled interval straddles an integer at maximum precision"
    return w, ""


def verify_certificate(cert: MahlerCertificate,
                       exponent_budget: int | None = None) -> VerificationResult:
    """Independently check a MahlerCertificate by interval arithmetic.

    No representation counts are consulted: the series value is enclosed
    directly, pushed through interval Horner evaluation, scaled by 2**s,
    and reduced to a fractional part. Acceptance requires that enclosure to
    exclude every integer (which alone proves f(mu) != 0) and to intersect
    the certificate's claimed interval (which ties the proof to the
    certificate rather than to some other fact).
    """
    ci = cert.frac_interval
    if not (ZERO < ci.lower and ci.upper < ONE):
        return VerificationResult(False, "certificate interval touches an integer")
    w, reason = _scaled_frac_enclosure(mahler_series(), cert.poly, cert.s, cert.k,
                                       exponent_budget)
    if w is None:
        return VerificationResult(False, reason)
    if not ZERO < w.lower:
        return VerificationResult(False, "fractional part not separated from zero", w)
    if not w.intersects(ci):
        return VerificationResult(
            False, "independent enclosure disjoint from certificate interval", w)
    return VerificationResult(True, "fractional part isolated within certificate interval", w)


@dataclass(frozen=True)
class PedagogyEntry:
    """Exactly checked side conditions at one partial sum lambda_s.

    ``denominator_ok``: f(lambda_s) * 2**(t*s!) is an integer.
    ``lower_bound_ok``: |f(lambda_s)| >= 2**(-t*s!), checked when the value
    is nonzero (None otherwise — the bound is vacuous at a root).
    ``tail_ok``: lambda - lambda_s < 2*2**(-(s+1)!), via an upper enclosure
    of lambda (None when not checked at this s).
    """

    s: int
    lambda_s: DyadicNumber
    value: DyadicNumber
    denominator_exponent: int
    denominator_ok: bool
    nonzero: bool
    lower_bound_ok: bool | None
    tail_ok: bool | None

    def to_json_dict(self) -> dict:
        return {
            "s": self.s,
            "lambda_s": _dyadic_to_json(self.lambda_s),
            "value": _dyadic_to_json(self.value),
            "denominator_exponent": self.denominator_exponent,
            "denominator_ok": self.denominator_ok,
            "nonzero": self.nonzero,
            "lower_bound_ok": self.lower_bound_ok,
            "tail_ok": self.tail_ok,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PedagogyEntry":
        return cls(
            s=int(data["s"]),
            lambda_s=DyadicNumber.from_json_dict(data["lambda_s"]),
            value=DyadicNumber.from_json_dict(data["value"]),
            denominator_exponent=int(data["denominator_exponent"]),
            denominator_ok=bool(data["denominator_ok"]),
            nonzero=bool(data["nonzero"]),
            lower_bound_ok=data["lower_bound_ok"],
            tail_ok=data["tail_ok"],
        )


@dataclass(frozen=True)
class LiouvilleCertificate:
    """Interval proof that f(lambda) != 0, plus the classical side checks."""

    poly: IntPolynomial
    terms_used: int
    value_interval: DyadicInterval | None
    verdict: str
    pedagogy: tuple[PedagogyEntry, ...] = field(default=())

    def to_json_dict(self) -> dict:
        return {
            "schema": "lacunary.liouville-certificate/1",
            "poly": list(self.poly.leading_first()),
            "degree": self.poly.degree,
            "terms_used": self.terms_used,
            "value_interval": (_interval_to_json(self.value_interval)
                               if self.value_interval else None),
            "verdict": self.verdict,
            "pedagogy": [entry.to_json_dict() for entry in self.pedagogy],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LiouvilleCertificate":
        if data.get("schema") != "lacunary.liouville-certificate/1":
            raise CertificateError(f"unexpected certificate schema: {data.get('schema')!r}")
        vi = data.get("value_interval")
        return cls(
            poly=IntPolynomial.from_leading(data["poly"]),
            terms_used=int(data["terms_used"]),
            value_interval=DyadicInterval.from_json_dict(vi) if vi else None,
            verdict=str(data["verdict"]),
            pedagogy=tuple(PedagogyEntry.from_json_dict(e) for e in data["pedagogy"]),
        )


def _liouville_pedagogy(poly: IntPolynomial, s_cap: int, tail_cap: int,
                        canonical: SeriesSpec) -> tuple[PedagogyEntry, ...]:
    t = poly.degree
    raw = liouville_series()
    entries = []
    for s in range(0, s_cap + 1):
        lam_s = partial_sum(raw, s + 1)
        value = poly.evaluate(lam_s)
        denom_exp = t * math.factorial(s)
        denom_ok = value.exponent <= denom_exp
        nonzero = not value.is_zero
        lower_ok = None
        if nonzero:
            lower_ok = not abs(value) < DyadicNumber.pow2(-denom_exp)
        tail_ok = None
        if s <= tail_cap:
            upper = eval_interval(canonical, s + 2).upper
            tail_ok = upper - lam_s < DyadicNumber.pow2(1 - math.factorial(s + 1))
        entries.append(PedagogyEntry(s, lam_s, value, denom_exp, denom_ok,
                                     nonzero, lower_ok, tail_ok))
    return tuple(entries)


def liouville_nonvanishing(poly: IntPolynomial, s_cap: int = 5, tail_cap: int = 4,
                           exponent_budget: int | None = None) -> LiouvilleCertificate:
    """Certify f(lambda) != 0 by refining an interval until it excludes 0.

    The refinement walks the canonical series prefix as far as the exponent
    budget permits (the factorial exponents outgrow any budget within a
    dozen terms). Failure to separate from zero is reported as inconclusive
    rather than raised: with enough precision it can only happen if f
    genuinely vanishes at lambda, which no integer polynomial does, so an
    inconclusive verdict in practice flags a too-small budget.
    """
    budget = budgets.exponent_budget(exponent_budget)
    canonical = liouville_series().canonicalize()
    pedagogy = _liouville_pedagogy(poly, s_cap, tail_cap, canonical)

    prefix, exhausted = canonical.terms_until_exponent(budget + 1)
    count_cap = len(prefix) if exhausted else len(prefix) - 1
    for count in range(2, count_cap + 1):
        x = eval_interval(canonical, count, budget)
        y = eval_poly_interval(poly, x)
        if not y.contains_zero:
            return LiouvilleCertificate(poly, count, y, VERDICT_CERTIFIED, pedagogy)
    return LiouvilleCertificate(poly, count_cap, None, VERDICT_INCONCLUSIVE, pedagogy)


@dataclass(frozen=True)
class GeneralizedReport:
    """Outcome of the exploratory digit-isolation search on a series.

    When the verdict is certified, (s, m, k) are the gap triple actually
    used, e_m the isolated weighted digit coefficient, and frac_interval
    the independently computed enclosure of {2**s * f(value)} that excludes
    every integer. Inconclusive reports keep the reason; they make no claim
    about the underlying value.
    """

    series: str
    poly: IntPolynomial
    verdict: str
    reason: str | None = None
    s: int | None = None
    m: int | None = None
    k: int | None = None
    e_m: int | None = None
    frac_interval: DyadicInterval | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == VERDICT_CERTIFIED

    def to_json_dict(self) -> dict:
        return {
            "schema": "lacunary.generalized-report/1",
            "series": self.series,
            "poly": list(self.poly.leading_first()),
            "verdict": self.verdict,
            "reason": self.reason,
            "s": self.s,
            "m": self.m,
            "k": self.k,
            "e_m": self.e_m,
            "frac_interval": (_interval_to_json(self.frac_interval)
                              if self.frac_interval else None),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "GeneralizedReport":
        if data.get("schema") != "lacunary.generalized-report/1":
            raise CertificateError(f"unexpected report schema: {data.get('schema')!r}")
        fi = data.get("frac_interval")
        return cls(
            series=str(data["series"]),
            poly=IntPolynomial.from_leading(data["poly"]),
            verdict=str(data["verdict"]),
            reason=data.get("reason"),
            s=data.get("s"),
            m=data.get("m"),
            k=data.get("k"),
            e_m=data.get("e_m"),
            frac_interval=DyadicInterval.from_json_dict(fi) if fi else None,
        )


def generalized_witness(series: SeriesSpec, poly: IntPolynomial,
                        horizon: int = DEFAULT_HORIZON,
                        guard_bits: int = DEFAULT_GUARD_BITS,
                        exponent_budget: int | None = None,
                        table_budget: int | None = None) -> GeneralizedReport:
    """Search for an isolated nonzero digit coefficient and certify through it.

    The weighted coefficients e_n of f(value) are tabulated up to the
    horizon and scanned (ascending) for consecutive nonzero positions
    s < m < k whose gaps pass two screens: the main term |e_m| * 2**(s-m)
    together with a heuristic tail bound must fit under 1/2, and the upper
    gap k - m must clear the tail bound's bit length plus the guard. The
    screens only select a candidate; the certificate itself comes from the
    same independent interval verification the Mahler path uses, so a bad
    heuristic can cost completeness, never soundness.
    """
    name = series.name
    try:
        ser = series if series.canonicalized else series.canonicalize()
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        return GeneralizedReport(name, poly, VERDICT_INCONCLUSIVE,
                                 reason=f"series not canonicalizable: {exc}")
    if ser.radix != 2:
        return GeneralizedReport(name, poly, VERDICT_INCONCLUSIVE,
                                 reason="digit isolation needs a radix-2 series")

    coeffs = poly.coefficients
    try:
        rows = {q: weighted_digit_row(ser, q, horizon, table_budget=table_budget)
                for q, a in enumerate(coeffs) if a}
    except BudgetError as exc:
        return GeneralizedReport(name, poly, VERDICT_INCONCLUSIVE,
                                 reason=f"table budget too small: {exc}")
    e = [0] * (horizon + 1)
    for q, row in rows.items():
        a = coeffs[q]
        for n in range(horizon + 1):
            if row[n]:
                e[n] += a * row[n]

    # Heuristic coefficient bound for the gap screens: the lemma-style
    # ceiling inflated by the largest coefficient magnitude in range. It
    # need not be sound for loose sequences; the verification step is.
    b_sup = ser.coeff_bound
    if b_sup is None:
        seen = [abs(b) for a, b in ser.terms_until_exponent(horizon + 1)[0] if a <= horizon]
        b_sup = max(seen, default=1)
    b_sup = max(b_sup, 1)
    d_heur = 0
    fact = 1
    for q, a in enumerate(coeffs):
        if q:
            fact *= q
        d_heur += abs(a) * fact * fact * b_sup ** q
    gap_needed = d_heur.bit_length() + guard_bits

    nonzero = [n for n in range(1, horizon + 1) if e[n]]
    last_reason = "no qualifying gap triple within horizon"
    for i in range(1, len(nonzero) - 1):
        s, m, k = nonzero[i - 1], nonzero[i], nonzero[i + 1]
        if k - m < gap_needed:
            continue
        main = DyadicNumber(e[m]).scale_pow2(s - m)
        tail = DyadicNumber(d_heur).scale_pow2(s + 1 - k)
        if not tail < abs(main) or not abs(main) + tail < HALF:
            continue
        w, reason = _scaled_frac_enclosure(ser, poly, s, k, exponent_budget)
        if w is None:
            last_reason = reason
            continue
        if not ZERO < w.lower:
            last_reason = "candidate enclosure not separated from zero"
            continue
        return GeneralizedReport(name, poly, VERDICT_CERTIFIED, reason=None,
                                 s=s, m=m, k=k, e_m=e[m], frac_interval=w)
    return GeneralizedReport(name, poly, VERDICT_INCONCLUSIVE, reason=last_reason)


def enumerate_polynomials(max_degree: int, height: int) -> Iterator[IntPolynomial]:
    """All integer polynomials with 1 <= degree <= max_degree, |coeffs| <= height.

    Sign symmetry is deduplicated by fixing the leading coefficient
    positive (f and -f vanish together). Deterministic order: by degree,
    then leading coefficient, then the remaining coefficients
    lexicographically from the constant term upward.
    """
    if max_degree < 1 or height < 1:
        raise ValueError("need max_degree >= 1 and height >= 1")
    span = range(-height, height + 1)
    for t in range(1, max_degree + 1):
        for lead in range(1, height + 1):
            for rest in itertools.product(span, repeat=t):
                yield IntPolynomial(rest + (lead,))
