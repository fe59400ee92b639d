"""Generalized Laguerre polynomials in the standard normalization."""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.core.errors import DomainError

FloatArray = NDArray[np.float64]


def laguerre(n: int, alpha: float, x: ArrayLike) -> FloatArray:
    """L_n^(alpha)(x) from the three-term recurrence.

    (k + 1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    alpha : float
        Parameter.
    x : array_like
        Evaluation points.
    """
    if n < 0:
        raise DomainError("Laguerre degree must be nonnegative")
    xx = np.asarray(x, dtype=float)
    prev = np.ones_like(xx)
    if n == 0:
        return prev
    cur = 1.0 + alpha - xx
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - xx) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_derivatives(
    n: int, alpha: float, x: ArrayLike
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """Return L, L' and L'' using d/dx L_n^(a) = -L_{n-1}^(a+1)."""
    xx = np.asarray(x, dtype=float)
    value = laguerre(n, alpha, xx)
    first = -laguerre(n - 1, alpha + 1, xx) if n >= 1 else np.zeros_like(xx)
    second = laguerre(n - 2, alpha + 2, xx) if n >= 2 else np.zeros_like(xx)  # noqa: PLR2004
    return value, first, second


__all__ = ["laguerre", "laguerre_derivatives"]
