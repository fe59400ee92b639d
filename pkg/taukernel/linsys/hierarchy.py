"""Stationary KdV and mKdV hierarchy checks on a grid of x."""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.config import defaults
from taukernel.core.differences import STENCIL_MARGIN, grid_derivative, grid_step
from taukernel.core.errors import DomainError
from taukernel.core.parallel import sweep
from taukernel.linsys.ring import a_power, bracket, potential
from taukernel.linsys.system import DiscreteLinearSystem

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
MAX_LEVEL = 3


@dataclass(frozen=True)
class HierarchyCheck:
    """Samples of u and f_l with the recurrence residual of each level.

    ``levels[l]`` holds f_l = (-1)^l 2 floor(A^(2l-1)); f_0 = 1.
    """

    x: FloatArray
    u: FloatArray
    levels: dict[int, FloatArray]
    residuals: dict[int, float]


def dressed_potential(
    sys: DiscreteLinearSystem, x_grid: ArrayLike, *, max_workers: int = 1
) -> FloatArray:
    """u(x) = -4 floor(A) at every grid point."""
    x = np.asarray(x_grid, dtype=float)
    return np.array(sweep(lambda xv: potential(sys, xv), list(x), max_workers=max_workers))


def kdv_hierarchy_check(
    sys: DiscreteLinearSystem,
    x_grid: ArrayLike,
    ell_max: int = 2,
    *,
    max_workers: int = 1,
) -> HierarchyCheck:
    """Residuals of f_l' + f_(l-1)'''/4 - u f_(l-1)' - u' f_(l-1)/2 for l <= ell_max.

    Parameters
    ----------
    sys : DiscreteLinearSystem
        The system whose brackets define u and f_l.
    x_grid : array_like
        Uniform grid, step at most 0.1 (1e-2 or finer for the stated accuracy).
    ell_max : int
        Highest level, 1 to 3.
    """
    if not 1 <= ell_max <= MAX_LEVEL:
        raise DomainError(f"ell_max must be between 1 and {MAX_LEVEL}")
    x = np.asarray(x_grid, dtype=float)
    h = grid_step(x, max_step=defaults.COARSE_GRID_STEP)
    if h > defaults.MAX_GRID_STEP:
        logger.warning("KdV grid step %.3g is coarser than %.3g", h, defaults.MAX_GRID_STEP)

    powers = [a_power(sys, 2 * ell - 1) for ell in range(1, ell_max + 1)]

    def brackets(xv: float) -> list[float]:
        return [bracket(sys, xv, p) for p in powers]

    rows = np.array(sweep(brackets, list(x), max_workers=max_workers))
    levels: dict[int, FloatArray] = {0: np.ones_like(x)}
    for ell in range(1, ell_max + 1):
        levels[ell] = (-1) ** ell * 2.0 * rows[:, ell - 1]
    u = -4.0 * rows[:, 0]
    du = grid_derivative(u, h, 1)

    residuals: dict[int, float] = {}
    inner = slice(STENCIL_MARGIN, x.size - STENCIL_MARGIN)
    for ell in range(1, ell_max + 1):
        prev = levels[ell - 1]
        residual = (
            grid_derivative(levels[ell], h, 1)
            + 0.25 * grid_derivative(prev, h, 3)
            - u * grid_derivative(prev, h, 1)
            - 0.5 * du * prev
        )
        residuals[ell] = float(np.max(np.abs(residual[inner])))
        logger.debug("KdV level %d residual %.3e", ell, residuals[ell])
    return HierarchyCheck(x=x, u=u, levels=levels, residuals=residuals)


def mkdv_w_plus(u_samples: ArrayLike, x_grid: ArrayLike) -> NDArray[np.complex128]:
    """w_+ = -((u')^2 + 2i u'') / 4 on a uniform grid, ``nan`` at the margins."""
    u = np.asarray(u_samples, dtype=float)
    x = np.asarray(x_grid, dtype=float)
    if u.shape != x.shape:
        raise DomainError("samples and grid differ in shape")
    h = grid_step(x)
    du = grid_derivative(u, h, 1)
    d2u = grid_derivative(u, h, 2)
    return -0.25 * (du**2 + 2j * d2u)


__all__ = ["HierarchyCheck", "dressed_potential", "kdv_hierarchy_check", "mkdv_w_plus"]
