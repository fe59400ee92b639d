"""Central finite-difference stencils.

Grid stencils are fourth-order accurate and return arrays of the same length as
their input with ``nan`` in the positions the stencil cannot reach. Callable
stencils evaluate the function at shifted points and are used as independent
checks of analytic derivatives.
"""

from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray

from taukernel.core.errors import GridError

FloatArray = NDArray[np.float64]

#: number of points lost at each end by ``grid_derivative``
STENCIL_MARGIN = 3


def grid_step(x: FloatArray, max_step: float | None = None) -> float:
    """Return the spacing of a uniform grid.

    Parameters
    ----------
    x : ndarray
        Increasing grid.
    max_step : float, optional
        Largest admissible spacing.

    Raises
    ------
    GridError
        If the grid is too short, not uniform, or coarser than ``max_step``.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2 * STENCIL_MARGIN + 1:
        raise GridError(f"grid needs at least {2 * STENCIL_MARGIN + 1} points")
    steps = np.diff(x)
    h = float(steps.mean())
    if h <= 0 or np.max(np.abs(steps - h)) > 1e-9 * max(1.0, abs(h)):
        raise GridError("grid must be uniform and increasing")
    if max_step is not None and h > max_step:
        raise GridError(f"grid step {h:.3g} exceeds {max_step:.3g}")
    return h


def grid_derivative(values: NDArray[np.generic], h: float, order: int) -> NDArray[np.generic]:
    """Differentiate samples on a uniform grid.

    Parameters
    ----------
    values : ndarray
        Samples, real or complex.
    h : float
        Grid spacing.
    order : {1, 2, 3}
        Derivative order.

    Returns
    -------
    ndarray
        Derivative samples, ``nan`` where the stencil does not fit.
    """
    f = np.asarray(values)
    out = np.full(f.shape, np.nan, dtype=np.result_type(f, float))
    m = STENCIL_MARGIN
    n = f.size
    if n < 2 * m + 1:
        raise GridError("too few samples for the stencil")

    def s(k: int) -> NDArray[np.generic]:
        return f[m + k : n - m + k]

    if order == 1:
        out[m:-m] = (s(-2) - 8 * s(-1) + 8 * s(1) - s(2)) / (12 * h)
    elif order == 2:  # noqa: PLR2004
        out[m:-m] = (-s(-2) + 16 * s(-1) - 30 * s(0) + 16 * s(1) - s(2)) / (12 * h**2)
    elif order == 3:  # noqa: PLR2004
        out[m:-m] = (
            s(-3) - 8 * s(-2) + 13 * s(-1) - 13 * s(1) + 8 * s(2) - s(3)
        ) / (8 * h**3)
    else:
        raise ValueError("order must be 1, 2 or 3")
    return out


def interior(values: NDArray[np.generic]) -> NDArray[np.generic]:
    """Strip the stencil margin from grid samples."""
    return np.asarray(values)[STENCIL_MARGIN:-STENCIL_MARGIN]


def first_derivative(f: Callable[[float], float], x: float, h: float = 1e-3) -> float:
    """Five-point central first derivative of a scalar function."""
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def second_derivative(f: Callable[[float], float], x: float, h: float = 1e-3) -> float:
    """Five-point central second derivative of a scalar function."""
    return (
        -f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)
    ) / (12 * h**2)


def mixed_partial(
    f: Callable[[float, float], float],
    x: float,
    t: float,
    h: float = 5e-3,
    k: float | None = None,
) -> float:
    """Four-point cross stencil for the mixed partial derivative."""
    k = h if k is None else k
    return (f(x + h, t + k) - f(x + h, t - k) - f(x - h, t + k) + f(x - h, t - k)) / (
        4 * h * k
    )


def richardson_mixed_partial(
    f: Callable[[float, float], float], x: float, t: float, h: float = 1e-2
) -> float:
    """Cross stencil extrapolated from steps ``h`` and ``h/2``.

    The cross stencil error expands in even powers of the step, so the
    combination ``(4 D(h/2) - D(h)) / 3`` is fourth-order accurate.
    """
    coarse = mixed_partial(f, x, t, h)
    fine = mixed_partial(f, x, t, h / 2)
    return (4 * fine - coarse) / 3


__all__ = [
    "STENCIL_MARGIN",
    "first_derivative",
    "grid_derivative",
    "grid_step",
    "interior",
    "mixed_partial",
    "richardson_mixed_partial",
    "second_derivative",
]
