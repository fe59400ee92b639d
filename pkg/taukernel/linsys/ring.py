"""The differential ring of operators built from A and F_x = (I + R_x)^-1.

With M = AF + FA - 2FAF the ring has the product P * Q = P M Q, the derivation
dP = A(I - 2F)P + P' + P(I - 2F)A, and the bracket
floor(P) = C exp(-xA) F P F exp(-xA) B. Since dF/dx = M exactly, both the
homomorphism floor(P * Q) = floor(P) floor(Q) and the Leibniz rule hold at the
discrete level up to rounding.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from taukernel.config import defaults
from taukernel.core.errors import DomainError, SingularOperatorError
from taukernel.linsys.system import DiscreteLinearSystem, resolvent_R

FloatArray = NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class RingElement:
    """A matrix of the ring tied to the x at which F_x was formed."""

    matrix: FloatArray
    x_base: float

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.matrix)):
            raise DomainError("ring element has non-finite entries")


Operand = RingElement | FloatArray


@dataclass(frozen=True, eq=False)
class RingState:
    """R_x, F_x, exp(-xA) and the star-product middle factor at one x."""

    sys: DiscreteLinearSystem
    x: float
    r: FloatArray
    f: FloatArray
    e: FloatArray
    middle: FloatArray

    @property
    def a(self) -> FloatArray:
        return np.diag(self.sys.a)

    @property
    def identity(self) -> FloatArray:
        return np.eye(self.sys.size)

    def left(self) -> FloatArray:
        """Row vector C exp(-xA) F."""
        return (self.sys.c * self.e) @ self.f

    def right(self) -> FloatArray:
        """Column vector F exp(-xA) B."""
        return self.f @ (self.e * self.sys.b)

    def bracket(self, p: FloatArray) -> float:
        return float(self.left() @ p @ self.right())


@lru_cache(maxsize=64)
def ring_state(sys: DiscreteLinearSystem, x: float) -> RingState:
    """Form F_x with a condition guard and cache it per (system, x).

    Raises
    ------
    SingularOperatorError
        If the condition number of I + R_x exceeds the configured limit.
    """
    r = resolvent_R(sys, x)
    system = np.eye(sys.size) + r
    cond = float(np.linalg.cond(system))
    if not np.isfinite(cond) or cond > defaults.CONDITION_LIMIT:
        raise SingularOperatorError(f"I + R_x is ill-conditioned at x={x} (cond {cond:.3g})")
    f = np.linalg.inv(system)
    a = sys.a
    fa = f * a[None, :]
    af = a[:, None] * f
    middle = af + fa - 2.0 * fa @ f
    return RingState(sys=sys, x=x, r=r, f=f, e=np.exp(-x * a), middle=middle)


def _matrix(p: Operand, x: float) -> FloatArray:
    if isinstance(p, RingElement):
        if p.x_base != x:
            raise DomainError(f"ring element formed at x={p.x_base}, used at x={x}")
        return p.matrix
    return np.asarray(p)


def bracket(sys: DiscreteLinearSystem, x: float, p: Operand) -> float:
    """floor(P) = C exp(-xA) F P F exp(-xA) B."""
    return ring_state(sys, x).bracket(_matrix(p, x))


def star_product(sys: DiscreteLinearSystem, x: float, p: Operand, q: Operand) -> RingElement:
    """P * Q = P (AF + FA - 2FAF) Q."""
    state = ring_state(sys, x)
    return RingElement(_matrix(p, x) @ state.middle @ _matrix(q, x), x)


def f_derivative(sys: DiscreteLinearSystem, x: float) -> FloatArray:
    """dF/dx = F(AR + RA)F, which equals AF + FA - 2FAF."""
    return ring_state(sys, x).middle


def middle_derivative(sys: DiscreteLinearSystem, x: float) -> FloatArray:
    """d/dx (AF + FA - 2FAF) = (I - 2F)AM + MA(I - 2F)."""
    state = ring_state(sys, x)
    g_a = (state.identity - 2.0 * state.f) * state.sys.a[None, :]
    a_g = state.sys.a[:, None] * (state.identity - 2.0 * state.f)
    return g_a @ state.middle + state.middle @ a_g


def ring_derivation(
    sys: DiscreteLinearSystem, x: float, p: Operand, dpdx: Operand
) -> RingElement:
    """dP = A(I - 2F)P + dP/dx + P(I - 2F)A."""
    state = ring_state(sys, x)
    pm = _matrix(p, x)
    g = state.identity - 2.0 * state.f
    a = state.sys.a
    value = (a[:, None] * g) @ pm + _matrix(dpdx, x) + pm @ (g * a[None, :])
    return RingElement(value, x)


def star_derivative(
    sys: DiscreteLinearSystem, x: float, p: Operand, dp: Operand, q: Operand, dq: Operand
) -> RingElement:
    """d/dx of P * Q from the derivatives of its factors."""
    state = ring_state(sys, x)
    pm, qm = _matrix(p, x), _matrix(q, x)
    value = (
        _matrix(dp, x) @ state.middle @ qm
        + pm @ middle_derivative(sys, x) @ qm
        + pm @ state.middle @ _matrix(dq, x)
    )
    return RingElement(value, x)


def a_power(sys: DiscreteLinearSystem, k: int) -> FloatArray:
    """A^k as a dense matrix."""
    return np.diag(sys.a**k)


def potential(sys: DiscreteLinearSystem, x: float) -> float:
    """u(x) = -4 floor(A)."""
    return -4.0 * bracket(sys, x, a_power(sys, 1))


def log_det_resolvent(sys: DiscreteLinearSystem, x: float) -> float:
    """log det(I + R_x)."""
    sign, value = np.linalg.slogdet(np.eye(sys.size) + resolvent_R(sys, x))
    if sign <= 0:
        raise SingularOperatorError(f"det(I + R_x) is not positive at x={x}")
    return float(value)


__all__ = [
    "RingElement",
    "RingState",
    "a_power",
    "bracket",
    "f_derivative",
    "log_det_resolvent",
    "middle_derivative",
    "potential",
    "ring_derivation",
    "ring_state",
    "star_derivative",
    "star_product",
]
