"""Exact arithmetic for lacunary binary series.

The package computes digit expansions of values like mu = sum 2**(-2**n)
and lambda = sum 2**(-n!) without rounding, counts representations of
integers as sums of sequence terms, screens sequences for the sparseness
and looseness properties those counts control, and emits machine-checkable
certificates that integer polynomials do not vanish at such values. All
arithmetic is over dyadic rationals and arbitrary-precision integers; no
floating point is involved anywhere.
"""

from .dyadic import DyadicInterval, DyadicNumber, frac_part_interval
from .errors import (
    BudgetError,
    CertificateError,
    LacunaryError,
    PolynomialError,
    PrecisionError,
    SequenceError,
    SeriesError,
)
from .polynomial import IntPolynomial, eval_poly_interval, parse_polynomial
from .refuter import (
    GeneralizedReport,
    LiouvilleCertificate,
    MahlerCertificate,
    PedagogyEntry,
    VerificationResult,
    choose_p,
    coeff_bound_D,
    enumerate_polynomials,
    generalized_witness,
    liouville_nonvanishing,
    mahler_witness,
    verify_certificate,
)
from .repcount import (
    AuditReport,
    RepTable,
    dnq_bruteforce,
    dnq_general,
    dnq_pow2,
    lemma_audit,
    weighted_digit_coeff,
    weighted_digit_row,
)
from .seqprops import (
    ClassificationReport,
    LoosenessReport,
    SequenceSpec,
    SparsenessReport,
    check_loose,
    check_sparse,
    classify,
    representable_set,
    sequence_preset,
)
from .series import (
    DigitExpansion,
    SeriesSpec,
    digits,
    eval_interval,
    partial_sum,
    series_preset,
    tail_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BudgetError",
    "CertificateError",
    "ClassificationReport",
    "DigitExpansion",
    "DyadicInterval",
    "DyadicNumber",
    "GeneralizedReport",
    "IntPolynomial",
    "LacunaryError",
    "LiouvilleCertificate",
    "LoosenessReport",
    "MahlerCertificate",
    "PedagogyEntry",
    "PolynomialError",
    "PrecisionError",
    "RepTable",
    "SequenceError",
    "SequenceSpec",
    "SeriesError",
    "SeriesSpec",
    "SparsenessReport",
    "VerificationResult",
    "check_loose",
    "check_sparse",
    "choose_p",
    "classify",
    "coeff_bound_D",
    "digits",
    "dnq_bruteforce",
    "dnq_general",
    "dnq_pow2",
    "enumerate_polynomials",
    "eval_interval",
    "eval_poly_interval",
    "frac_part_interval",
    "generalized_witness",
    "lemma_audit",
    "liouville_nonvanishing",
    "mahler_witness",
    "parse_polynomial",
    "partial_sum",
    "representable_set",
    "sequence_preset",
    "series_preset",
    "tail_bound",
    "verify_certificate",
    "weighted_digit_coeff",
    "weighted_digit_row",
]
