"""Tau functions det(I + Gamma_phi(x)) along a grid of shifts."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.config import defaults
from taukernel.core.differences import grid_derivative, grid_step
from taukernel.core.errors import SingularOperatorError
from taukernel.core.parallel import sweep
from taukernel.operators.kernel import build_hankel, fredholm_det
from taukernel.operators.scattering import BesselK1, ScatteringFunction, ScatteringSpec
from taukernel.specfun import QuadratureRule, halfline_rule

FloatArray = NDArray[np.float64]


def default_rule(
    function: ScatteringFunction, shift: float, n: int = defaults.QUADRATURE_NODES
) -> QuadratureRule:
    """Half-line rule with the map scale suited to ``function``.

    Bessel-K1 kernels decay like exp(-2 sqrt(s y)), so their scale follows
    1/sqrt(x); everything else uses scale 1.
    """
    if isinstance(function, BesselK1) and shift > 0:
        return halfline_rule(n, scale=1.0 / math.sqrt(shift))
    return halfline_rule(n, scale=defaults.HALFLINE_SCALE)


@dataclass(frozen=True)
class TauProfile:
    """tau(x), log tau(x) and u = -2 (log tau)'' on a uniform grid."""

    x: FloatArray
    log_tau: FloatArray
    sign: FloatArray
    u: FloatArray

    @property
    def tau(self) -> FloatArray:
        return self.sign * np.exp(self.log_tau)


def tau_function(
    function: ScatteringFunction,
    rule: QuadratureRule,
    x_grid: ArrayLike,
    *,
    max_workers: int = 1,
) -> TauProfile:
    """Evaluate the tau function of ``function`` at every shift in ``x_grid``.

    Raises
    ------
    SingularOperatorError
        If det(I + Gamma) vanishes at a grid point.
    """
    x = np.asarray(x_grid, dtype=float)
    h = grid_step(x, max_step=defaults.COARSE_GRID_STEP)

    def one(xv: float) -> tuple[float, float]:
        det = fredholm_det(build_hankel(ScatteringSpec(function, xv), rule))
        if det.is_zero:
            raise SingularOperatorError(f"tau function vanishes at x={xv}")
        return det.log_abs, float(np.real(det.phase))

    pairs = sweep(one, list(x), max_workers=max_workers)
    log_tau = np.array([p[0] for p in pairs])
    sign = np.array([p[1] for p in pairs])
    u = -2.0 * grid_derivative(log_tau, h, 2)
    return TauProfile(x=x, log_tau=log_tau, sign=sign, u=u)


__all__ = ["TauProfile", "default_rule", "tau_function"]
