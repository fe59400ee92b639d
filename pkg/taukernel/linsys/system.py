"""Discrete realization of the linear system (-A, B, C)."""

from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import NDArray

from taukernel.config import defaults
from taukernel.core.differences import first_derivative
from taukernel.core.errors import DomainError
from taukernel.operators.scattering import Envelope
from taukernel.specfun import QuadratureRule

FloatArray = NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class DiscreteLinearSystem:
    """A = diag(y_i), B_i = C_i = sqrt(w_i) h(y_i) exp(-t / y_i).

    Attributes
    ----------
    rule : QuadratureRule
        Half-line rule whose nodes are the spectrum of A.
    h_values : ndarray
        Envelope on the nodes.
    t : float
        Light-cone time, ``t > 0``.
    b, c : ndarray
        Input and output vectors. Darboux transforms replace ``b`` only.
    """

    rule: QuadratureRule
    h_values: FloatArray
    t: float
    b: FloatArray = field(default=None)  # type: ignore[assignment]
    c: FloatArray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise DomainError("linear system needs t > 0")
        h = np.asarray(self.h_values, dtype=float)
        if h.shape != self.rule.nodes.shape:
            raise DomainError("envelope must be tabulated on the rule nodes")
        base = self.rule.sqrt_weights * h * np.exp(-self.t / self.rule.nodes)
        object.__setattr__(self, "h_values", h)
        if self.b is None:
            object.__setattr__(self, "b", base)
        if self.c is None:
            object.__setattr__(self, "c", base.copy())

    @classmethod
    def from_envelope(
        cls, envelope: Envelope, t: float, rule: QuadratureRule
    ) -> "DiscreteLinearSystem":
        return cls(rule=rule, h_values=envelope(rule.nodes), t=t)

    @property
    def a(self) -> FloatArray:
        """Diagonal of A."""
        return self.rule.nodes

    @property
    def size(self) -> int:
        return self.rule.size

    def at_time(self, t: float) -> "DiscreteLinearSystem":
        """The same envelope at another light-cone time."""
        return DiscreteLinearSystem(rule=self.rule, h_values=self.h_values, t=t)

    def with_input(self, b: FloatArray) -> "DiscreteLinearSystem":
        """Copy with a new input vector B and the same A, C."""
        return replace(self, b=np.asarray(b, dtype=float), c=self.c)

    def scattering(self, x: float) -> float:
        """phi(x) = C exp(-xA) B."""
        return float(np.sum(self.c * np.exp(-x * self.a) * self.b))


def resolvent_R(sys: DiscreteLinearSystem, x: float) -> FloatArray:
    """R_x with entries B_i C_j exp(-x(y_i + y_j)) / (y_i + y_j)."""
    if x < 0:
        raise DomainError("R_x is defined for x >= 0")
    y = sys.a
    e = np.exp(-x * y)
    return np.outer(e * sys.b, sys.c * e) / (y[:, None] + y[None, :])


def lyapunov_residual(sys: DiscreteLinearSystem, x: float, step: float = 1e-4) -> float:
    """Relative size of dR/dx + AR + RA with dR/dx by central differences."""
    y = sys.a
    r = resolvent_R(sys, x)
    drdx = (resolvent_R(sys, x + step) - resolvent_R(sys, x - step)) / (2 * step)
    ar_ra = y[:, None] * r + r * y[None, :]
    scale = float(np.linalg.norm(ar_ra))
    if scale == 0:
        return float(np.linalg.norm(drdx))
    return float(np.linalg.norm(drdx + ar_ra)) / scale


def lyapunov_t_residual(sys: DiscreteLinearSystem, x: float, step: float = 1e-4) -> float:
    """Relative size of -dR/dt - (A^-1 R + R A^-1) with dR/dt by central differences."""
    if sys.t <= step:
        raise DomainError("t must exceed the difference step")
    y = sys.a
    r = resolvent_R(sys, x)
    drdt = (
        resolvent_R(sys.at_time(sys.t + step), x) - resolvent_R(sys.at_time(sys.t - step), x)
    ) / (2 * step)
    rhs = r / y[:, None] + r / y[None, :]
    scale = float(np.linalg.norm(rhs))
    if scale == 0:
        return float(np.linalg.norm(drdt))
    return float(np.linalg.norm(-drdt - rhs)) / scale


def scattering_derivative_check(sys: DiscreteLinearSystem, x: float) -> float:
    """|phi'(x) + C A exp(-xA) B| with phi' by a five-point stencil."""
    analytic = -float(np.sum(sys.c * sys.a * np.exp(-x * sys.a) * sys.b))
    numeric = first_derivative(sys.scattering, x, h=defaults.FD_STEP)
    return abs(numeric - analytic)


__all__ = [
    "DiscreteLinearSystem",
    "lyapunov_residual",
    "lyapunov_t_residual",
    "resolvent_R",
    "scattering_derivative_check",
]
