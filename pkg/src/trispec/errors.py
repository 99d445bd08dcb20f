"""Exception and warning types shared across the package."""

__all__ = [
    "TrispecError",
    "InvalidSystemError",
    "FormatError",
    "ZeroSpectralGapError",
    "SingularShiftError",
    "ConvergenceError",
    "TailMassWarning",
]


class TrispecError(Exception):
    """Base class for all package-specific errors."""


class InvalidSystemError(TrispecError, ValueError):
    """An input system/operator violates a structural invariant."""


class FormatError(TrispecError, ValueError):
    """A text input document does not conform to the documented grammar."""


class ZeroSpectralGapError(TrispecError, ArithmeticError):
    """The system has no killing at all, so the maximal eigenvalue is 0.

    The efficient-initials construction is undefined in this case (phi
    diverges); the high-level solver returns the exact pair (0, constant
    vector) instead.
    """


class SingularShiftError(TrispecError, ArithmeticError):
    """A shifted solve hit a (numerically) singular matrix.

    Raised by the tridiagonal solver when a pivot falls below the
    numerical-rank threshold, i.e. the shift is an eigenvalue to working
    precision.  Iterative drivers treat this as convergence.
    """


class ConvergenceError(TrispecError, RuntimeError):
    """An iteration reached its cap without meeting the stopping rule."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class TailMassWarning(UserWarning):
    """A truncated infinite interval still carries non-negligible density
    at the cutoff, so quadrature results may be biased."""
