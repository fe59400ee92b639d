"""Variance of linear statistics from Chebyshev coefficients on [a, b]."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from taukernel.core.errors import DomainError
from taukernel.coulomb.hilbert import arcsine_rule, principal_value
from taukernel.coulomb.measures import EquilibriumMeasure

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
ScalarFunction = Callable[[FloatArray], FloatArray]

MAX_TERMS = 128
DIFFERENCE_STEP = 1e-6


@dataclass(frozen=True, eq=False)
class ChebStatistic:
    """Chebyshev data of psi((a+b)/2 + (b-a)t/2) = a_0/2 + sum_k a_k T_k(t).

    Attributes
    ----------
    coefficients : ndarray
        a_0 .. a_K.
    variance : float
        sum_{k=1}^K k a_k^2 / 4.
    tail_bound : float
        The same sum over the extra coefficients K < k < 2K.
    mean : float or None
        N int psi rho when a measure is supplied.
    hankel_hs_norm : float
        Frobenius norm of the coefficient Hankel matrix [a_{j+k}].
    """

    a: float
    b: float
    coefficients: FloatArray
    variance: float
    tail_bound: float
    hankel_hs_norm: float
    mean: float | None = None

    def hankel_matrix(self) -> FloatArray:
        """[a_{j+k}] for j, k <= K/2."""
        size = (self.coefficients.size - 1) // 2 + 1
        idx = np.add.outer(np.arange(size), np.arange(size))
        return self.coefficients[idx]


def chebyshev_coefficients(psi: ScalarFunction, a: float, b: float, count: int) -> FloatArray:
    """a_k = (2/N) sum_j psi(x_j) cos(k theta_j) at N = count Chebyshev–Gauss nodes."""
    theta = math.pi * (np.arange(count) + 0.5) / count
    x = 0.5 * (a + b) + 0.5 * (b - a) * np.cos(theta)
    values = psi(x)
    k = np.arange(count)
    return (2.0 / count) * (np.cos(np.outer(k, theta)) @ values)


def linear_statistic(
    psi: ScalarFunction,
    a: float,
    b: float,
    terms: int = 32,
    *,
    measure: EquilibriumMeasure | None = None,
    particles: int = 1,
) -> ChebStatistic:
    """Variance sum_k k a_k^2 / 4 with a tail estimate from coefficients up to 2K.

    Raises
    ------
    DomainError
        If ``terms`` is outside 1..128 or the interval is empty.
    """
    if not 1 <= terms <= MAX_TERMS:
        raise DomainError(f"terms must be in 1..{MAX_TERMS}")
    if not b > a:
        raise DomainError("need a < b")
    full = chebyshev_coefficients(psi, a, b, 2 * terms)
    coeffs = full[: terms + 1]
    k = np.arange(full.size)
    contributions = k * full**2 / 4.0
    variance = float(np.sum(contributions[1 : terms + 1]))
    tail = float(np.sum(contributions[terms + 1 :]))
    size = terms // 2 + 1
    hankel = coeffs[np.add.outer(np.arange(size), np.arange(size))]
    mean = None
    if measure is not None:
        mean = particles * measure.integrate(psi)
    return ChebStatistic(
        a=a,
        b=b,
        coefficients=coeffs,
        variance=variance,
        tail_bound=tail,
        hankel_hs_norm=float(np.linalg.norm(hankel)),
        mean=mean,
    )


def variance_double_integral(
    psi: ScalarFunction,
    a: float,
    b: float,
    dpsi: ScalarFunction | None = None,
    n: int = 200,
) -> float:
    """(1/(2 pi^2)) int psi(x)/sqrt((b-x)(x-a)) PV int sqrt((b-y)(y-a)) psi'(y)/(x-y) dy dx.

    Without ``dpsi`` the derivative is a central difference.
    """
    if dpsi is None:
        h = DIFFERENCE_STEP * (b - a)

        def dpsi(y: FloatArray) -> FloatArray:
            return (psi(y + h) - psi(y - h)) / (2.0 * h)

    # odd node count keeps the outer nodes off the inner ones
    outer = arcsine_rule(a, b, "hard", n + 1)
    inner = principal_value(dpsi, a, b, outer.nodes, "soft", n)
    return float(np.dot(outer.weights, psi(outer.nodes) * inner)) / (2.0 * math.pi**2)


__all__ = [
    "ChebStatistic",
    "chebyshev_coefficients",
    "linear_statistic",
    "variance_double_integral",
]
