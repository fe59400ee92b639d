"""Modified Bessel functions of the second kind from their integral form.

K_nu(z) = int_0^inf exp(-z cosh u) cosh(nu u) du is evaluated with the
trapezoid rule directly in u. The integrand is analytic and decaying in the
strip |Im u| < pi/2, so the rule converges exponentially in 1/h and a fixed
step covers every order and argument used in the package. The factor
exp(-z) is pulled out so the summed terms stay of order one.
"""

import math
from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.core.errors import DomainError
from taukernel.specfun.values import SpecialValue

FloatArray = NDArray[np.float64]

STEP = 0.05
#: scaled integrand is below exp(-TAIL) beyond the truncation point
TAIL = 760.0
_EPS = np.finfo(float).eps


def _log_cosh(x: float) -> float:
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)


def _truncation(z_min: float, log_weight: Callable[[float], float]) -> float:
    upper = math.acosh(1.0 + TAIL / z_min)
    while z_min * (math.cosh(upper) - 1.0) - log_weight(upper) < TAIL:
        upper += 0.25
    return upper


def _cosh_integral(
    z: FloatArray, log_weight: Callable[[float], float], step: float = STEP
) -> tuple[FloatArray, FloatArray]:
    """Trapezoid sums of int_0^inf exp(-z (cosh u - 1)) g(u) du.

    Returns the step-``h`` sum and the difference from the step-``2h`` sum.
    """
    upper = _truncation(float(np.min(z)), log_weight)
    count = math.ceil(upper / step)
    fine = np.zeros_like(z)
    coarse = np.zeros_like(z)
    for k in range(count + 1):
        u = k * step
        term = np.exp(-z * (math.cosh(u) - 1.0) + log_weight(u))
        if k == 0:
            term = 0.5 * term
        fine += term
        if k % 2 == 0:
            coarse += term
    fine *= step
    coarse *= 2.0 * step
    return fine, np.abs(fine - coarse)


def _check_args(nu: float, z: FloatArray) -> None:
    if not nu >= 0 or not math.isfinite(nu):
        raise DomainError(f"order must be a finite real >= 0, got {nu}")
    if z.size == 0 or not np.all(np.isfinite(z)) or np.any(z <= 0):
        raise DomainError("Bessel K needs finite arguments z > 0")


def bessel_k(nu: float, z: float) -> SpecialValue:
    """K_nu(z) for real ``nu >= 0`` and ``z > 0``.

    Parameters
    ----------
    nu : float
        Order.
    z : float
        Positive argument.

    Returns
    -------
    SpecialValue
        Value with the step-halving error estimate plus a rounding floor.

    Raises
    ------
    DomainError
        If ``z <= 0`` or the order is negative.
    """
    zz = np.array([z], dtype=float)
    _check_args(nu, zz)
    total, diff = _cosh_integral(zz, lambda u: _log_cosh(nu * u))
    scale = math.exp(-z)
    value = float(total[0]) * scale
    bound = (float(diff[0]) + 8 * _EPS * float(total[0])) * scale
    return SpecialValue(value=value, abs_error_bound=bound)


def bessel_k_values(nu: float, z: ArrayLike) -> FloatArray:
    """Vectorized K_nu over an array of positive arguments."""
    zz = np.asarray(z, dtype=float)
    flat = zz.reshape(-1)
    _check_args(nu, flat)
    total, _ = _cosh_integral(flat, lambda u: _log_cosh(nu * u))
    return (total * np.exp(-flat)).reshape(zz.shape)


def bessel_k_derivative(nu: float, z: float, order: int) -> SpecialValue:
    """Derivative d^m/dz^m K_nu(z).

    Differentiating under the integral inserts ``(-cosh u)^m``.
    """
    if order < 0:
        raise DomainError("derivative order must be >= 0")
    zz = np.array([z], dtype=float)
    _check_args(nu, zz)

    def log_weight(u: float) -> float:
        return order * math.log(math.cosh(u)) + _log_cosh(nu * u)

    total, diff = _cosh_integral(zz, log_weight)
    scale = math.exp(-z) * (-1.0) ** order
    value = float(total[0]) * scale
    bound = (float(diff[0]) + 8 * _EPS * float(total[0])) * abs(scale)
    return SpecialValue(value=value, abs_error_bound=bound)


__all__ = ["bessel_k", "bessel_k_derivative", "bessel_k_values"]
