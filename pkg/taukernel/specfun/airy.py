"""Airy function Ai on the real line.

Maclaurin series up to ``CROSSOVER``, asymptotic series truncated at its smallest
term beyond it. At x = 4 the smallest asymptotic term is still about 2e-8 in
absolute size, so the crossover sits at 5.5 where both branches stay below 1e-10.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.specfun.values import SpecialValue

FloatArray = NDArray[np.float64]

AI0 = 0.355028053887817239  # Ai(0)
AIP0 = 0.258819403792806798  # -Ai'(0)
CROSSOVER = 5.5
MACLAURIN_TERMS = 60
ASYMPTOTIC_TERMS = 60
_EPS = np.finfo(float).eps


def _maclaurin(x: FloatArray) -> tuple[FloatArray, FloatArray]:
    x3 = x**3
    f_term = np.ones_like(x)
    g_term = x.copy()
    f_sum = f_term.copy()
    g_sum = g_term.copy()
    magnitude = AI0 * np.abs(f_term) + AIP0 * np.abs(g_term)
    for k in range(1, MACLAURIN_TERMS + 1):
        f_term = f_term * x3 / ((3 * k - 1) * (3 * k))
        g_term = g_term * x3 / ((3 * k) * (3 * k + 1))
        f_sum += f_term
        g_sum += g_term
        magnitude += AI0 * np.abs(f_term) + AIP0 * np.abs(g_term)
    last = AI0 * np.abs(f_term) + AIP0 * np.abs(g_term)
    value = AI0 * f_sum - AIP0 * g_sum
    return value, 4 * _EPS * magnitude + last


def _asymptotic(x: FloatArray) -> tuple[FloatArray, FloatArray]:
    zeta = (2.0 / 3.0) * x**1.5
    prefactor = np.exp(-zeta) / (2.0 * np.sqrt(np.pi) * x**0.25)
    term = np.ones_like(x)
    total = np.ones_like(x)
    omitted = np.zeros_like(x)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, ASYMPTOTIC_TERMS + 1):
        ratio = (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        nxt = -term * ratio / zeta
        stop = active & (np.abs(nxt) >= np.abs(term))
        omitted[stop] = np.abs(nxt[stop])
        active &= ~stop
        total = np.where(active, total + nxt, total)
        term = np.where(active, nxt, term)
    if np.any(active):
        k = ASYMPTOTIC_TERMS + 1
        ratio = (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        omitted[active] = np.abs(term[active] * ratio / zeta[active])
    value = prefactor * total
    return value, prefactor * omitted + 4 * _EPS * np.abs(value)


def airy_values(x: ArrayLike) -> tuple[FloatArray, FloatArray]:
    """Vectorized Ai with per-point error bounds.

    Returns
    -------
    values, bounds : ndarray
        Function values and absolute error estimates, shaped like ``x``.
    """
    xx = np.asarray(x, dtype=float)
    flat = xx.reshape(-1)
    values = np.empty_like(flat)
    bounds = np.empty_like(flat)
    near = flat <= CROSSOVER
    if np.any(near):
        values[near], bounds[near] = _maclaurin(flat[near])
    if np.any(~near):
        values[~near], bounds[~near] = _asymptotic(flat[~near])
    return values.reshape(xx.shape), bounds.reshape(xx.shape)


def airy(x: float) -> SpecialValue:
    """Ai(x) with an absolute error estimate."""
    values, bounds = airy_values(np.array([x], dtype=float))
    return SpecialValue(value=float(values[0]), abs_error_bound=float(bounds[0]))


__all__ = ["CROSSOVER", "airy", "airy_values"]
