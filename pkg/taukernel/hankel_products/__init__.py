"""Integrable kernels, Hankel-product factorizations and the Laguerre example."""

from taukernel.hankel_products.kernels import (
    AntidiagonalReport,
    HankelFactorization,
    HankelProductMatrix,
    IntegrableKernelSpec,
    OmegaData,
    antidiagonal_matrix_props,
    divided_difference_check,
    hankel_product_kernel,
    hankel_product_matrix,
    integrable_kernel,
    symplectic_j,
)
from taukernel.hankel_products.laguerre import (
    LaguerreIdentity,
    laguerre_factorization,
    laguerre_identity_check,
    laguerre_ode_residual,
    laguerre_spec,
    laguerre_u,
    ode_coefficient,
)

__all__ = [
    "AntidiagonalReport",
    "HankelFactorization",
    "HankelProductMatrix",
    "IntegrableKernelSpec",
    "LaguerreIdentity",
    "OmegaData",
    "antidiagonal_matrix_props",
    "divided_difference_check",
    "hankel_product_kernel",
    "hankel_product_matrix",
    "integrable_kernel",
    "laguerre_factorization",
    "laguerre_identity_check",
    "laguerre_ode_residual",
    "laguerre_spec",
    "laguerre_u",
    "ode_coefficient",
    "symplectic_j",
]
