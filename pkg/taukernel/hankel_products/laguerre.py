"""The Laguerre example: u = exp(-x/2) x^((alpha+1)/2) L_n^(alpha)(x).

u satisfies u'' + Q u = 0 with
Q = (2n + alpha + 1)/(2x) + (1 - alpha^2)/(4x^2) - 1/4. For alpha = 1 the
Wronskian quotient (u(z)u'(w) - u'(z)u(w))/(z - w) equals
(n + 1) int_0^inf u(z+t) u(w+t) / ((z+t)(w+t)) dt, so psi = (n+1)u/x and
phi = u/x factorize it as a single Hankel product.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.core.errors import DomainError
from taukernel.hankel_products.kernels import (
    HankelFactorization,
    IntegrableKernelSpec,
    hankel_product_kernel,
    integrable_kernel,
    symplectic_j,
)
from taukernel.specfun import QuadratureRule, halfline_rule, laguerre_derivatives

FloatArray = NDArray[np.float64]
IDENTITY_NODES = 400


def laguerre_u(
    n: int, alpha: float, x: ArrayLike
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """u, u' and u'' with analytic derivatives."""
    xx = np.asarray(x, dtype=float)
    if np.any(xx <= 0):
        raise DomainError("Laguerre u is evaluated for x > 0")
    p = 0.5 * (alpha + 1.0)
    lag, dlag, d2lag = laguerre_derivatives(n, alpha, xx)
    envelope = np.exp(-0.5 * xx) * xx**p
    g = p / xx - 0.5  # logarithmic derivative of the envelope
    u = envelope * lag
    du = envelope * (dlag + g * lag)
    d2u = envelope * (d2lag + 2.0 * g * dlag + (g**2 - p / xx**2) * lag)
    return u, du, d2u


def ode_coefficient(n: int, alpha: float, x: ArrayLike) -> FloatArray:
    """Q(x) = (2n + alpha + 1)/(2x) + (1 - alpha^2)/(4x^2) - 1/4."""
    xx = np.asarray(x, dtype=float)
    return (2 * n + alpha + 1) / (2 * xx) + (1 - alpha**2) / (4 * xx**2) - 0.25


def laguerre_spec(n: int, alpha: float = 1.0) -> IntegrableKernelSpec:
    """Psi = (u, u') with J = [[0, -1], [1, 0]] and analytic Psi'."""

    def psi(x: float) -> FloatArray:
        u, du, _ = laguerre_u(n, alpha, x)
        return np.array([float(u), float(du)])

    def dpsi(x: float) -> FloatArray:
        _, du, d2u = laguerre_u(n, alpha, x)
        return np.array([float(du), float(d2u)])

    return IntegrableKernelSpec(psi=psi, j_matrix=symplectic_j(1), dpsi=dpsi)


def laguerre_factorization(n: int, alpha: float = 1.0) -> HankelFactorization:
    """psi = (n + 1) u / x and phi = u / x; only alpha = 1 factorizes this way."""
    if alpha != 1.0:
        raise DomainError("the single Hankel product factorization needs alpha = 1")
    factor = 0.5 * (2 * n + alpha + 1)

    def phi(x: FloatArray) -> FloatArray:
        return laguerre_u(n, alpha, x)[0] / x

    def psi(x: FloatArray) -> FloatArray:
        return factor * phi(x)

    return HankelFactorization(pairs=((psi, phi),))


@dataclass(frozen=True)
class LaguerreIdentity:
    """Wronskian quotient against the Hankel-product integral at (z, w)."""

    z: float
    w: float
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def relative(self) -> float:
        return self.residual / (1.0 + abs(self.lhs))


def laguerre_identity_check(
    n: int, z: float, w: float, rule: QuadratureRule | None = None
) -> LaguerreIdentity:
    """Both sides of the alpha = 1 identity; z = w uses the Wronskian-derivative limit."""
    if z <= 0 or w <= 0:
        raise DomainError("z and w must be positive")
    rule = rule or halfline_rule(IDENTITY_NODES)
    lhs = integrable_kernel(laguerre_spec(n), z, w)
    rhs = float(hankel_product_kernel(laguerre_factorization(n), z, w, rule))
    return LaguerreIdentity(z=z, w=w, lhs=lhs, rhs=rhs)


def laguerre_ode_residual(n: int, alpha: float, x_grid: ArrayLike) -> float:
    """max |J Psi' - diag(Q, 1) Psi| for Psi = (u, u') with analytic derivatives."""
    u, _, d2u = laguerre_u(n, alpha, x_grid)
    q = ode_coefficient(n, alpha, x_grid)
    # J Psi' = (-u'', u') and diag(Q, 1) Psi = (Q u, u'); the second rows agree identically
    return float(np.max(np.abs(d2u + q * u)))


__all__ = [
    "LaguerreIdentity",
    "laguerre_factorization",
    "laguerre_identity_check",
    "laguerre_ode_residual",
    "laguerre_spec",
    "laguerre_u",
    "ode_coefficient",
]
