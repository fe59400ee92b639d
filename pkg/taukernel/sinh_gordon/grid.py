"""Sinh-Gordon residuals on (x, t) grids in light-cone coordinates."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.config import defaults
from taukernel.core.differences import mixed_partial, richardson_mixed_partial
from taukernel.core.errors import DomainError, NormThresholdError
from taukernel.core.parallel import sweep
from taukernel.linsys import DiscreteLinearSystem, resolvent_R
from taukernel.operators import Envelope, HowlandWeight
from taukernel.sinh_gordon.phase import (
    diagonal_values,
    phase_S,
    phase_S_gamma,
    spectral_norm_estimate,
)
from taukernel.specfun import QuadratureRule, halfline_rule

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class PhaseGrid:
    """S, V(x,x), W(x,x) and the sinh-Gordon residual on a uniform grid.

    Arrays are indexed ``[i_t, i_x]``. ``discretization`` holds |S - S_Gamma|,
    the gap between the Howland and Hankel routes to S.
    """

    x_values: FloatArray
    t_values: FloatArray
    S: FloatArray
    V_diag: FloatArray
    W_diag: FloatArray
    residual_sg: FloatArray
    discretization: FloatArray

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residual_sg))

    @property
    def mean_residual(self) -> float:
        return float(np.mean(self.residual_sg))

    @property
    def max_discretization(self) -> float:
        return float(np.max(self.discretization))


def _uniform(values: ArrayLike, name: str) -> FloatArray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(f"{name} grid must be a nonempty 1-D array")
    if arr.size > 1:
        steps = np.diff(arr)
        if np.any(steps <= 0) or np.max(np.abs(steps - steps.mean())) > 1e-9:
            raise DomainError(f"{name} grid must be uniform and increasing")
    return arr


def phase_grid(
    h: Envelope,
    x_grid: ArrayLike,
    t_grid: ArrayLike,
    rule: QuadratureRule,
    *,
    step: float = defaults.CROSS_STEP,
    max_workers: int = 1,
    spectral: QuadratureRule | None = None,
) -> PhaseGrid:
    """Evaluate S, V, W and |S_xt - 2 sinh 2S| at every (x, t).

    The mixed partial uses the four-point cross stencil with ``h = k = step``.
    Each point also gets the discretization residual |S - S_Gamma|, with Gamma
    on ``rule`` and phi tabulated on ``spectral`` (a half-line rule of twice
    the size by default).

    Raises
    ------
    NormThresholdError
        Listing every grid point where ||R_(x;t)|| reaches the threshold.
    """
    x = _uniform(x_grid, "x")
    t = _uniform(t_grid, "t")
    if step > defaults.MAX_GRID_STEP:
        raise DomainError(f"cross-stencil step {step} exceeds {defaults.MAX_GRID_STEP}")
    if float(np.min(t)) - step <= 0:
        raise DomainError("t grid must stay positive under the stencil")
    h_values = h(rule.nodes)
    spectral = spectral or halfline_rule(2 * rule.size, rule.scale)
    spectral_h = h(spectral.nodes)
    points = [(xv, tv) for tv in t for xv in x]

    def norm_at(point: tuple[float, float]) -> float:
        xv, tv = point
        sys = DiscreteLinearSystem(rule=rule, h_values=h_values, t=tv - step)
        return spectral_norm_estimate(resolvent_R(sys, max(xv - step, 0.0)))

    norms = sweep(norm_at, points, max_workers=max_workers)
    bad = [p for p, n in zip(points, norms, strict=True) if n >= defaults.NORM_THRESHOLD]
    if bad:
        raise NormThresholdError(
            f"{len(bad)} grid points have ||R|| >= {defaults.NORM_THRESHOLD}", points=bad
        )

    systems = {tv: DiscreteLinearSystem(rule=rule, h_values=h_values, t=tv) for tv in t}

    def phase(xv: float, tv: float) -> float:
        sys = systems.get(tv) or DiscreteLinearSystem(rule=rule, h_values=h_values, t=tv)
        return phase_S(sys, xv)

    def one(point: tuple[float, float]) -> tuple[float, ...]:
        xv, tv = point
        values = diagonal_values(systems[tv], xv)
        s_xt = mixed_partial(phase, xv, tv, step)
        s_gamma = phase_S_gamma(spectral_h, xv, tv, rule, spectral)
        return (
            values.s,
            values.v,
            values.w,
            abs(s_xt - 2.0 * math.sinh(2.0 * values.s)),
            abs(values.s - s_gamma),
        )

    rows = np.array(sweep(one, points, max_workers=max_workers)).reshape(t.size, x.size, 5)
    grid = PhaseGrid(
        x_values=x,
        t_values=t,
        S=rows[..., 0],
        V_diag=rows[..., 1],
        W_diag=rows[..., 2],
        residual_sg=rows[..., 3],
        discretization=rows[..., 4],
    )
    logger.info(
        "sinh-Gordon residual max %.3e mean %.3e, discretization %.3e over %d points",
        grid.max_residual,
        grid.mean_residual,
        grid.max_discretization,
        len(points),
    )
    return grid


def sinh_gordon_residual(
    h: Envelope,
    x_grid: ArrayLike,
    t_grid: ArrayLike,
    rule: QuadratureRule,
    *,
    step: float = defaults.CROSS_STEP,
    max_workers: int = 1,
) -> FloatArray:
    """Matrix of |S_xt - 2 sinh 2S| indexed ``[i_t, i_x]``."""
    grid = phase_grid(h, x_grid, t_grid, rule, step=step, max_workers=max_workers)
    return grid.residual_sg


def linear_counterpart_residual(
    h: Envelope, x: float, t: float, rule: QuadratureRule, step: float = 1e-2
) -> float:
    """|phi_xt - 2 phi| for phi(x; t) = int exp(-xy - 2t/y) h(y)^2 dy.

    The mixed partial is Richardson-extrapolated from steps ``step`` and
    ``step / 2``.
    """
    if t - step <= 0:
        raise DomainError("t must exceed the stencil step")
    weight = HowlandWeight.from_envelope(h, t, rule)
    mixed = richardson_mixed_partial(weight.at, x, t, step)
    return abs(mixed - 2.0 * weight.at(x, t))


__all__ = [
    "PhaseGrid",
    "linear_counterpart_residual",
    "phase_grid",
    "sinh_gordon_residual",
]
