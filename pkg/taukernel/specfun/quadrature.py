"""Gauss–Legendre rules on intervals and on the half-line."""

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.polynomial.legendre import leggauss
from numpy.typing import NDArray

from taukernel.core.errors import ConvergenceError, DomainError

FloatArray = NDArray[np.float64]
DomainKind = Literal["interval", "halfline", "truncated"]


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights on a mapped domain.

    Attributes
    ----------
    nodes : ndarray
        Strictly increasing abscissae inside the domain.
    weights : ndarray
        Positive weights.
    kind : {"interval", "halfline", "truncated"}
        How the reference rule on [-1, 1] was mapped.
    lower, upper : float
        Domain endpoints; ``upper`` is ``inf`` for half-line rules.
    scale : float
        Rational-map parameter for half-line rules, interval length otherwise.
    """

    nodes: FloatArray
    weights: FloatArray
    kind: DomainKind
    lower: float
    upper: float
    scale: float
    sqrt_weights: FloatArray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1 or nodes.size == 0:
            raise DomainError("nodes and weights must be nonempty 1-D arrays")
        if np.any(np.diff(nodes) <= 0):
            raise DomainError("nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise DomainError("weights must be positive")
        if nodes[0] <= self.lower or nodes[-1] >= self.upper:
            raise DomainError("nodes must lie inside the domain")
        for arr in (nodes, weights):
            arr.setflags(write=False)
        sqrt_w = np.sqrt(weights)
        sqrt_w.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "sqrt_weights", sqrt_w)

    @property
    def size(self) -> int:
        """Number of nodes."""
        return int(self.nodes.size)

    def integrate(self, f: Callable[[FloatArray], FloatArray]) -> float:
        """Apply the rule to a vectorized integrand."""
        return float(np.dot(self.weights, f(self.nodes)))


def _reference_rule(n: int) -> tuple[FloatArray, FloatArray]:
    if n < 1:
        raise DomainError("rule size must be at least 1")
    u, w = leggauss(n)
    bad = (
        not np.all(np.isfinite(u))
        or not np.all(np.isfinite(w))
        or np.any(np.diff(u) <= 0)
        or abs(float(np.sum(w)) - 2.0) > 1e-11 * max(1, n)
    )
    if bad:
        raise ConvergenceError(
            f"Legendre node search failed for n={n}", residuals=[float(np.sum(w)) - 2]
        )
    return u, w


def gauss_legendre(n: int, interval: tuple[float, float] = (-1.0, 1.0)) -> QuadratureRule:
    """Gauss–Legendre rule with ``n`` nodes on a finite interval.

    Exact for polynomials of degree ``2n - 1``.

    Parameters
    ----------
    n : int
        Number of nodes, at least 1.
    interval : tuple of float
        Finite endpoints ``(a, b)`` with ``a < b``.
    """
    a, b = (float(v) for v in interval)
    if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
        raise DomainError(f"invalid interval ({a}, {b})")
    u, w = _reference_rule(n)
    half = 0.5 * (b - a)
    return QuadratureRule(
        nodes=a + half * (u + 1.0),
        weights=half * w,
        kind="interval",
        lower=a,
        upper=b,
        scale=b - a,
    )


def halfline_rule(n: int, scale: float = 1.0) -> QuadratureRule:
    """Rule on (0, inf) from the map ``y = scale * (1 + u) / (1 - u)``.

    Parameters
    ----------
    n : int
        Number of nodes.
    scale : float
        Positive map parameter; half of the nodes fall below ``scale``.
    """
    if not scale > 0:
        raise DomainError("half-line scale must be positive")
    u, w = _reference_rule(n)
    y = scale * (1.0 + u) / (1.0 - u)
    jac = 2.0 * scale / (1.0 - u) ** 2
    return QuadratureRule(
        nodes=y,
        weights=w * jac,
        kind="halfline",
        lower=0.0,
        upper=math.inf,
        scale=scale,
    )


def truncated_rule(n: int, length: float) -> QuadratureRule:
    """Gauss–Legendre rule on [0, length], a half-line diagnostic."""
    if not length > 0:
        raise DomainError("truncation length must be positive")
    rule = gauss_legendre(n, (0.0, length))
    return QuadratureRule(
        nodes=rule.nodes,
        weights=rule.weights,
        kind="truncated",
        lower=0.0,
        upper=length,
        scale=length,
    )


__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "halfline_rule",
    "truncated_rule",
]
