"""Exception hierarchy shared by every taukernel module."""

from collections.abc import Sequence


class TaukernelError(Exception):
    """Base class for all taukernel errors."""


class DomainError(TaukernelError, ValueError):
    """Argument outside the domain of an operation."""


class GridError(DomainError):
    """Grid is non-uniform, too coarse, or too short for a stencil."""


class ResonanceError(DomainError):
    """Spectral parameter collides with the discrete spectrum."""


class AdmissibilityError(DomainError):
    """Data fails an integrability or support condition."""


class ConfigError(TaukernelError):
    """Malformed run configuration."""


class UnsupportedError(TaukernelError, NotImplementedError):
    """Requested case is outside the implemented range."""


class ConvergenceError(TaukernelError, ArithmeticError):
    """Iterative procedure did not converge.

    Parameters
    ----------
    message : str
        Human readable description.
    residuals : sequence of float, optional
        Final residuals of the failed iteration, kept for diagnostics.
    """

    def __init__(self, message: str, residuals: Sequence[float] = ()) -> None:
        super().__init__(message)
        self.residuals = tuple(float(r) for r in residuals)


class SingularOperatorError(TaukernelError, ArithmeticError):
    """Operator is singular or too ill-conditioned to invert."""


class NormThresholdError(SingularOperatorError):
    """Operator norm reached the invertibility threshold.

    Parameters
    ----------
    message : str
        Human readable description.
    points : sequence of tuple of float
        The offending ``(x, t)`` evaluation points.
    """

    def __init__(
        self, message: str, points: Sequence[tuple[float, float]] = ()
    ) -> None:
        super().__init__(message)
        self.points = tuple(points)


__all__ = [
    "AdmissibilityError",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "GridError",
    "NormThresholdError",
    "ResonanceError",
    "SingularOperatorError",
    "TaukernelError",
    "UnsupportedError",
]
