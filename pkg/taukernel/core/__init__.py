"""Shared plumbing: errors, logging, finite differences and sweeps."""

from taukernel.core.errors import (
    AdmissibilityError,
    ConfigError,
    ConvergenceError,
    DomainError,
    GridError,
    NormThresholdError,
    ResonanceError,
    SingularOperatorError,
    TaukernelError,
    UnsupportedError,
)
from taukernel.core.logs import configure_logging
from taukernel.core.parallel import sweep

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
    "configure_logging",
    "sweep",
]
