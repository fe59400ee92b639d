"""Darboux addition and the diagonal-Green infinitesimal addition series."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from taukernel.config import defaults
from taukernel.core.errors import DomainError, ResonanceError
from taukernel.linsys.ring import ring_state
from taukernel.linsys.system import DiscreteLinearSystem

FloatArray = NDArray[np.float64]


def darboux_multiplier(sys: DiscreteLinearSystem, zeta: float, sigma: int) -> FloatArray:
    """Diagonal of (zeta I + sigma A)(zeta I - sigma A)^-1."""
    if sigma not in (1, -1):
        raise DomainError("sigma must be +1 or -1")
    if not zeta > 0:
        raise DomainError("zeta must be positive")
    y = sys.a
    if sigma == 1 and float(np.min(np.abs(zeta - y))) < defaults.RESONANCE_GUARD:
        raise ResonanceError(f"zeta={zeta} is resonant with a node of A")
    return (zeta + sigma * y) / (zeta - sigma * y)


def darboux_transform(
    sys: DiscreteLinearSystem, zeta: float, sigma: int
) -> DiscreteLinearSystem:
    """B -> (zeta I + sigma A)(zeta I - sigma A)^-1 B with A and C unchanged."""
    return sys.with_input(darboux_multiplier(sys, zeta, sigma) * sys.b)


@dataclass(frozen=True)
class GreenSeries:
    """Partial sum against the matrix-inverse closed form.

    ``increments[m]`` is the m-th term of the geometric expansion.
    """

    partial_sum: float
    closed_form: float
    increments: tuple[float, ...]

    @property
    def error(self) -> float:
        return abs(self.partial_sum - self.closed_form)


def green_diagonal_series(
    sys: DiscreteLinearSystem, x: float, lam: float, order: int
) -> GreenSeries:
    """Infinitesimal addition X(u) at spectral parameter ``lam``.

    The closed form is
    (-2/sqrt(-lam)) floor(A G A (lam + A^2)^-1 + A (lam + A^2)^-1 G A) with
    G = I - 2F, and the partial sum expands (lam + A^2)^-1 geometrically:
    (-2/sqrt(-lam)) sum_m (-1)^m lam^-(m+1) floor(A G A^(2m+1) + A^(2m+1) G A).

    Raises
    ------
    ResonanceError
        If ``lam`` is not below -1.5 (max node)^2.
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    y = sys.a
    if lam >= -defaults.SPECTRAL_MARGIN * float(np.max(y)) ** 2:
        raise ResonanceError(
            f"lambda={lam:.6g} is inside the spectral margin of the discrete operator"
        )
    state = ring_state(sys, x)
    left, right = state.left(), state.right()
    g = state.identity - 2.0 * state.f
    prefactor = -2.0 / math.sqrt(-lam)

    def floor_sym(d: FloatArray) -> float:
        # floor(A G D + D G A) for diagonal D
        p = (y[:, None] * g) * d[None, :] + d[:, None] * (g * y[None, :])
        return float(left @ p @ right)

    closed = prefactor * floor_sym(y / (lam + y**2))
    increments = []
    for m in range(order + 1):
        scale = (-1) ** m / lam ** (m + 1)
        increments.append(prefactor * scale * floor_sym(y ** (2 * m + 1)))
    return GreenSeries(
        partial_sum=math.fsum(increments), closed_form=closed, increments=tuple(increments)
    )


__all__ = ["GreenSeries", "darboux_multiplier", "darboux_transform", "green_diagonal_series"]
