"""Exception types shared across the package."""


class LacunaryError(Exception):
    """Base class for every package-specific error."""


class BudgetError(LacunaryError):
    """A configured resource budget or hard cap was exceeded."""


class PrecisionError(LacunaryError):
    """Digit extraction hit the refinement cap before every digit settled.

    The exception carries whatever prefix *was* determined, so callers can
    report partial output instead of discarding the work.
    """

    def __init__(self, message: str, achieved_prefix: str = "",
                 integer_part: int | None = None, sign: int | None = None):
        super().__init__(message)
        self.achieved_prefix = achieved_prefix
        self.integer_part = integer_part
        self.sign = sign


class SeriesError(LacunaryError):
    """Invalid series construction or a violated series invariant."""


class SequenceError(LacunaryError):
    """Invalid sequence construction, preset spec, or sequence file."""


class PolynomialError(LacunaryError):
    """Malformed polynomial coefficients."""


class CertificateError(LacunaryError):
    """An internal consistency check failed while building a certificate."""
