"""Principal-value integrals on [a, b] against arcsine-type edge weights.

Densities are written rho(y) = w(y) g(y) with g smooth on [a, b] and
w(y) = sqrt((b - y)(y - a)) for soft edges or 1/sqrt((b - y)(y - a)) for
hard edges. Substituting y = a + (b - a) sin^2(theta) turns
w(y) dy into 2 (y - a)(b - y) dtheta or 2 dtheta, both smooth, and the
principal value is taken by subtracting g(x):

    PV int w g / (x - y) dy = int w (g(y) - g(x)) / (x - y) dy + g(x) PV int w / (x - y) dy

with PV int w / (x - y) dy equal to pi (x - (a + b)/2) for soft edges and
0 for hard edges.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.core.errors import DomainError
from taukernel.specfun import gauss_legendre

FloatArray = NDArray[np.float64]
Edge = Literal["soft", "hard"]
SmoothFactor = Callable[[FloatArray], FloatArray]

ARCSINE_NODES = 200
#: |x - y| below this fraction of b - a uses the derivative of g
COINCIDENCE = 1e-12
DERIVATIVE_STEP = 1e-6


@dataclass(frozen=True, eq=False)
class ArcsineRule:
    """Nodes y_j in (a, b) with weights for int w(y) F(y) dy."""

    a: float
    b: float
    edge: Edge
    nodes: FloatArray
    weights: FloatArray

    def integrate(self, f: SmoothFactor) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def arcsine_rule(a: float, b: float, edge: Edge = "soft", n: int = ARCSINE_NODES) -> ArcsineRule:
    """Gauss–Legendre in theta after y = a + (b - a) sin^2(theta)."""
    if not b > a:
        raise DomainError(f"need a < b, got a={a}, b={b}")
    base = gauss_legendre(n, (0.0, 0.5 * math.pi))
    theta = base.nodes
    y = a + (b - a) * np.sin(theta) ** 2
    if edge == "soft":
        weights = base.weights * 2.0 * (y - a) * (b - y)
    elif edge == "hard":
        weights = base.weights * 2.0
    else:
        raise DomainError(f"unknown edge kind '{edge}'")
    return ArcsineRule(a=a, b=b, edge=edge, nodes=y, weights=weights)


def edge_weight(a: float, b: float, edge: Edge, x: ArrayLike) -> FloatArray:
    """w(x) inside (a, b) and 0 outside."""
    x = np.asarray(x, dtype=float)
    inside = (x > a) & (x < b)
    prod = np.where(inside, (b - x) * (x - a), 1.0)
    root = np.sqrt(prod)
    w = root if edge == "soft" else 1.0 / root
    return np.where(inside, w, 0.0)


def _weight_pv(a: float, b: float, edge: Edge, x: FloatArray) -> FloatArray:
    if edge == "soft":
        return math.pi * (x - 0.5 * (a + b))
    return np.zeros_like(x)


def principal_value(
    g: SmoothFactor,
    a: float,
    b: float,
    x: ArrayLike,
    edge: Edge = "soft",
    n: int = ARCSINE_NODES,
) -> FloatArray:
    """PV int_a^b w(y) g(y) / (x - y) dy for x in (a, b).

    Raises
    ------
    DomainError
        If some ``x`` is not strictly inside (a, b).
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs <= a) or np.any(xs >= b):
        raise DomainError("principal values are evaluated inside (a, b)")
    rule = arcsine_rule(a, b, edge, n)
    y = rule.nodes
    gy = g(y)
    gx = g(xs)
    diff = xs[:, None] - y[None, :]
    near = np.abs(diff) < COINCIDENCE * (b - a)
    safe = np.where(near, 1.0, diff)
    quotient = (gy[None, :] - gx[:, None]) / safe
    if np.any(near):
        h = DERIVATIVE_STEP * (b - a)
        slope = (g(xs + h) - g(xs - h)) / (2.0 * h)
        quotient = np.where(near, -slope[:, None], quotient)
    regular = quotient @ rule.weights
    return regular + gx * _weight_pv(a, b, edge, xs)


def hilbert_transform(
    g: SmoothFactor,
    a: float,
    b: float,
    x: ArrayLike,
    edge: Edge = "soft",
    n: int = ARCSINE_NODES,
) -> FloatArray:
    """(1/pi) PV int w g / (x - y) dy."""
    return principal_value(g, a, b, x, edge, n) / math.pi


__all__ = [
    "ARCSINE_NODES",
    "ArcsineRule",
    "Edge",
    "SmoothFactor",
    "arcsine_rule",
    "edge_weight",
    "hilbert_transform",
    "principal_value",
]
