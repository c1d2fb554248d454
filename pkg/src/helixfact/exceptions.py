"""Exception hierarchy shared by every module of the package."""


class HelixError(Exception):
    """Base class for all package errors."""


class RangeError(HelixError, IndexError):
    """An index or axis lies outside the grid."""


class ShapeError(HelixError, ValueError):
    """Array shapes, dims or region arities do not agree."""


class FormatError(HelixError, ValueError):
    """A serialized field is malformed.

    ``offset`` is the byte position at which decoding failed, if known.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class DegenerateSpectrumError(HelixError, ValueError):
    """The power spectrum is identically zero, so its logarithm is undefined."""


class NumericRangeError(HelixError, OverflowError):
    """A cepstrum is too large to exponentiate in double precision."""


class MarginalSpectrumError(HelixError, ValueError):
    """The spectrum touches zero on the unit circle (roots of modulus one)."""


class DomainError(HelixError, ValueError):
    """The input is outside the mathematical domain of the operation."""


class CorrelationUndefinedError(HelixError, ValueError):
    """Pearson correlation requested for a zero-variance input."""
