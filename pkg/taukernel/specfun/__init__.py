"""Special functions and quadrature rules."""

from taukernel.specfun.airy import airy, airy_values
from taukernel.specfun.bessel import bessel_k, bessel_k_derivative, bessel_k_values
from taukernel.specfun.gamma import barnes_g, barnes_g_log
from taukernel.specfun.orthopoly import laguerre, laguerre_derivatives
from taukernel.specfun.quadrature import (
    QuadratureRule,
    gauss_legendre,
    halfline_rule,
    truncated_rule,
)
from taukernel.specfun.values import SpecialValue

__all__ = [
    "QuadratureRule",
    "SpecialValue",
    "airy",
    "airy_values",
    "barnes_g",
    "barnes_g_log",
    "bessel_k",
    "bessel_k_derivative",
    "bessel_k_values",
    "gauss_legendre",
    "halfline_rule",
    "laguerre",
    "laguerre_derivatives",
    "truncated_rule",
]
