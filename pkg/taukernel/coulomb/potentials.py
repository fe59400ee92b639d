"""Scalar potentials of the Coulomb-fluid problems.

U0Potential is the scaled limit u_0(x) = 2 xi (2/x - 1) + 2 log x,
UNPotential the finite-n potential
u_n(x) = t(2/x - 1) + 2n log x + (1/2) log(1 - x) - log(2 - x) with t = 2 n xi,
and VSXPotential v(z) = -alpha log z + sqrt(s x)(z + 1/z).
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.core.errors import DomainError

FloatArray = NDArray[np.float64]


def _as_array(x: ArrayLike) -> FloatArray:
    return np.asarray(x, dtype=float)


class Potential(ABC):
    """External field with analytic first and second derivatives."""

    @abstractmethod
    def value(self, x: ArrayLike) -> FloatArray: ...

    @abstractmethod
    def derivative(self, x: ArrayLike) -> FloatArray: ...

    @abstractmethod
    def second_derivative(self, x: ArrayLike) -> FloatArray: ...

    def is_convex_at(self, x: ArrayLike) -> bool:
        return bool(np.all(self.second_derivative(x) > 0))


def _check_xi(xi: float) -> None:
    if not 0 < xi < 0.5:
        raise DomainError(f"xi must lie in (0, 1/2), got {xi}")


@dataclass(frozen=True)
class U0Potential(Potential):
    """u_0 on (0, inf); convex for x < 4 xi with its minimum at x = 2 xi."""

    xi: float

    def __post_init__(self) -> None:
        _check_xi(self.xi)

    def value(self, x: ArrayLike) -> FloatArray:
        x = _as_array(x)
        return 2.0 * self.xi * (2.0 / x - 1.0) + 2.0 * np.log(x)

    def derivative(self, x: ArrayLike) -> FloatArray:
        x = _as_array(x)
        return -4.0 * self.xi / x**2 + 2.0 / x

    def second_derivative(self, x: ArrayLike) -> FloatArray:
        x = _as_array(x)
        return 8.0 * self.xi / x**3 - 2.0 / x**2


@dataclass(frozen=True)
class UNPotential(Potential):
    """u_n = n u_0 + f on (0, 1) with f(x) = (1/2) log(1 - x) - log(2 - x)."""

    n: int
    xi: float

    def __post_init__(self) -> None:
        _check_xi(self.xi)
        if self.n < 1:
            raise DomainError("n must be at least 1")

    @property
    def t(self) -> float:
        return 2.0 * self.n * self.xi

    def _check(self, x: ArrayLike) -> FloatArray:
        x = _as_array(x)
        if np.any(x <= 0) or np.any(x >= 1):
            raise DomainError("u_n is defined on (0, 1)")
        return x

    def value(self, x: ArrayLike) -> FloatArray:
        x = self._check(x)
        return (
            self.t * (2.0 / x - 1.0)
            + 2.0 * self.n * np.log(x)
            + 0.5 * np.log1p(-x)
            - np.log(2.0 - x)
        )

    def derivative(self, x: ArrayLike) -> FloatArray:
        x = self._check(x)
        return -2.0 * self.t / x**2 + 2.0 * self.n / x + correction_derivative(x)

    def second_derivative(self, x: ArrayLike) -> FloatArray:
        x = self._check(x)
        return (
            4.0 * self.t / x**3
            - 2.0 * self.n / x**2
            - 0.5 / (1.0 - x) ** 2
            + 1.0 / (2.0 - x) ** 2
        )


def correction_derivative(x: ArrayLike) -> FloatArray:
    """f'(x) = -(1/2)/(1 - x) + 1/(2 - x)."""
    x = _as_array(x)
    return -0.5 / (1.0 - x) + 1.0 / (2.0 - x)


@dataclass(frozen=True)
class VSXPotential(Potential):
    """v(z) = -alpha log z + sqrt(s x)(z + 1/z) on z > 0; convex everywhere."""

    alpha: float
    s: float
    x: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and self.s > 0 and self.x > 0):
            raise DomainError("alpha, s and x must be positive")

    @property
    def coupling(self) -> float:
        """sqrt(s x); the potential depends on s and x only through it."""
        return math.sqrt(self.s * self.x)

    def value(self, z: ArrayLike) -> FloatArray:
        z = _as_array(z)
        return -self.alpha * np.log(z) + self.coupling * (z + 1.0 / z)

    def derivative(self, z: ArrayLike) -> FloatArray:
        z = _as_array(z)
        return -self.alpha / z + self.coupling * (1.0 - 1.0 / z**2)

    def second_derivative(self, z: ArrayLike) -> FloatArray:
        z = _as_array(z)
        return self.alpha / z**2 + 2.0 * self.coupling / z**3


@dataclass(frozen=True)
class ConvexityReport:
    """u_n'' at the minimum x = 2 xi of u_0, scaled by 1/n."""

    n: int
    xi: float
    second_derivative: float

    @property
    def scaled(self) -> float:
        return self.second_derivative / self.n

    @property
    def convex(self) -> bool:
        return self.scaled > 0


def un_potential(n: int, xi: float) -> tuple[UNPotential, ConvexityReport]:
    """u_n with the convexity report at x = 2 xi."""
    potential = UNPotential(n=n, xi=xi)
    value = float(potential.second_derivative(2.0 * xi))
    return potential, ConvexityReport(n=n, xi=xi, second_derivative=value)


__all__ = [
    "ConvexityReport",
    "Potential",
    "U0Potential",
    "UNPotential",
    "VSXPotential",
    "correction_derivative",
    "un_potential",
]
