"""Small-n checks of the Bessel moment structure behind D_n.

With m_k = (-1)^k K_1^(k)(t) = int_0^inf exp(-t cosh u) cosh^(k+1) u du,
det[m_{j+k}] equals the n-fold integral
(1/n!) int prod_{j<k} (cosh u_j - cosh u_k)^2 prod_j exp(-t cosh u_j) cosh u_j du_j.
"""

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from taukernel.core.errors import DomainError, UnsupportedError
from taukernel.operators import BesselK1
from taukernel.specfun import bessel_k, bessel_k_derivative, gauss_legendre, halfline_rule

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
ANDREIEF_NODES = 120
MAX_ANDREIEF_ORDER = 2
#: e^(-DECAY) relative cutoff of the cosh-integrand
DECAY = 40.0
BESSEL_FORM_NODES = 240
CHANGE_OF_VARIABLE_NODES = 200


@dataclass(frozen=True)
class AndreiefCheck:
    """Bessel-derivative determinant against the n-fold integral."""

    n: int
    t: float
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs) / abs(self.lhs)


def _cosh_cutoff(t: float, power: int) -> float:
    upper = math.acosh(1.0 + DECAY / t)
    while t * (math.cosh(upper) - 1.0) - power * upper < DECAY:
        upper += 0.25
    return upper


def bessel_moment_determinant(n: int, t: float) -> float:
    """det[(-1)^(j+k) K_1^(j+k)(t)] for j, k < n."""
    m = [(-1) ** k * bessel_k_derivative(1.0, t, k).value for k in range(2 * n - 1)]
    matrix = np.array([[m[j + k] for k in range(n)] for j in range(n)])
    return float(np.linalg.det(matrix))


def andreief_integral(n: int, t: float, nodes: int = ANDREIEF_NODES) -> float:
    """(1/n!) times the n-fold integral on a tensor-product Gauss–Legendre grid."""
    upper = _cosh_cutoff(t, 2 * n - 1)
    rule = gauss_legendre(nodes, (0.0, upper))
    c = np.cosh(rule.nodes)
    weight = rule.weights * np.exp(-t * (c - 1.0)) * c
    grids = np.meshgrid(*([c] * n), indexing="ij")
    weights = np.ones([nodes] * n)
    for axis in range(n):
        shape = [1] * n
        shape[axis] = nodes
        weights = weights * weight.reshape(shape)
    vandermonde = np.ones_like(weights)
    for j, k in itertools.combinations(range(n), 2):
        vandermonde = vandermonde * (grids[j] - grids[k]) ** 2
    total = float(np.sum(weights * vandermonde))
    return total * math.exp(-n * t) / math.factorial(n)


def andreief_check(n: int, t: float) -> AndreiefCheck:
    """Both sides of the Andréief identity for n = 1 or 2.

    Raises
    ------
    DomainError
        If ``t <= 0`` or ``n < 1``.
    UnsupportedError
        If ``n > 2``.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    if n > MAX_ANDREIEF_ORDER:
        raise UnsupportedError(f"Andréief check is implemented for n <= {MAX_ANDREIEF_ORDER}")
    if not t > 0:
        raise DomainError("t must be positive")
    lhs = bessel_moment_determinant(n, t)
    rhs = andreief_integral(n, t)
    logger.debug("Andreief n=%d t=%g: lhs %.16g rhs %.16g", n, t, lhs, rhs)
    return AndreiefCheck(n=n, t=t, lhs=lhs, rhs=rhs)


def scattering_bessel_form(s: float, x: float) -> tuple[float, float]:
    """int_0^inf exp(-x y - s/y) dy by quadrature and as sqrt(4s/x) K_1(2 sqrt(sx))."""
    if not s > 0 or not x > 0:
        raise DomainError("s and x must be positive")
    rule = halfline_rule(BESSEL_FORM_NODES, math.sqrt(s / x))
    quadrature = rule.integrate(lambda y: np.exp(-x * y - s / y))
    closed = float(BesselK1(s).evaluate(np.array([x]))[0])
    return quadrature, closed


@dataclass(frozen=True)
class ChangeOfVariableCheck:
    """The n = 1 integral in u and after x = 2 / (1 + cosh u)."""

    t: float
    u_integral: float
    x_integral: float

    @property
    def residual(self) -> float:
        return abs(self.u_integral - self.x_integral) / abs(self.u_integral)


def change_of_variable_check(t: float) -> ChangeOfVariableCheck:
    """K_1(t) against int_0^1 exp(-t(2/x - 1)) x^-2 (2 - x) / sqrt(1 - x) dx.

    The x-integral is taken in v with x = 1 - v^2, which removes the
    endpoint singularity.
    """
    if not t > 0:
        raise DomainError("t must be positive")
    rule = gauss_legendre(CHANGE_OF_VARIABLE_NODES, (0.0, 1.0))

    def integrand(v: FloatArray) -> FloatArray:
        x = 1.0 - v**2
        return 2.0 * np.exp(-t * (2.0 / x - 1.0)) * (2.0 - x) / x**2

    return ChangeOfVariableCheck(
        t=t, u_integral=bessel_k(1.0, t).value, x_integral=rule.integrate(integrand)
    )


__all__ = [
    "AndreiefCheck",
    "ChangeOfVariableCheck",
    "andreief_check",
    "andreief_integral",
    "bessel_moment_determinant",
    "change_of_variable_check",
    "scattering_bessel_form",
]
