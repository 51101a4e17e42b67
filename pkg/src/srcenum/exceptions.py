"""Error types raised across the package.

Every error below derives from SrcenumError so callers (and the
Monte-Carlo harness) can catch package failures with one except
clause, and from a matching builtin so generic handling keeps
working.
"""


class SrcenumError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(SrcenumError, ValueError):
    """Malformed or inconsistent caller input (shapes, ordering, ranges)."""


class DegenerateSpectrumError(SrcenumError, ValueError):
    """Spectrum unusable for the requested operation (zeros, empty block)."""


class PhaseTransitionError(SrcenumError, ValueError):
    """Signal eigenvalue below the detectability threshold sigma^2*sqrt(p_eff/n)."""


class OutOfRangeError(SrcenumError, ValueError):
    """Requested point lies outside tabulated coverage."""


class UnsupportedFieldError(SrcenumError, NotImplementedError):
    """Complex-valued ensemble (beta=2) requested where only beta=1 is implemented."""
