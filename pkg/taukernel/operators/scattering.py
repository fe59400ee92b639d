"""Scattering functions for Hankel operators on the half-line."""

import math
from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.interpolate import CubicSpline

from taukernel.core.errors import AdmissibilityError, DomainError
from taukernel.specfun import QuadratureRule, airy_values, bessel_k_values

FloatArray = NDArray[np.float64]
Envelope = Callable[[FloatArray], FloatArray]


def _exp_envelope(y: FloatArray) -> FloatArray:
    return np.exp(-y)


def _inv_exp_envelope(y: FloatArray) -> FloatArray:
    return np.exp(-1.0 / y)


def _one_envelope(y: FloatArray) -> FloatArray:
    return np.ones_like(y)


def _zero_envelope(y: FloatArray) -> FloatArray:
    return np.zeros_like(y)


ENVELOPES: dict[str, Envelope] = {
    "exp": _exp_envelope,
    "inv-exp": _inv_exp_envelope,
    "one": _one_envelope,
    "zero": _zero_envelope,
}


def envelope_by_name(name: str) -> Envelope:
    """Look up a named envelope h(y)."""
    try:
        return ENVELOPES[name]
    except KeyError:
        raise DomainError(
            f"unknown envelope '{name}', expected one of {sorted(ENVELOPES)}"
        ) from None


class ScatteringFunction(ABC):
    """A scalar scattering function phi on (0, inf)."""

    #: phi blows up at 0 so that t * phi(t)^2 is not integrable without a shift
    singular_at_zero: bool = False

    @abstractmethod
    def evaluate(self, t: FloatArray) -> FloatArray:
        """Values of phi at the points ``t``."""

    def __call__(self, t: ArrayLike) -> FloatArray:
        return self.evaluate(np.asarray(t, dtype=float))


@dataclass(frozen=True, eq=False)
class HowlandWeight(ScatteringFunction):
    """phi(tau; t) = int exp(-tau y - 2t/y) h(y)^2 dy by quadrature.

    Attributes
    ----------
    h_values : ndarray
        Envelope tabulated on the rule nodes.
    t : float
        Light-cone time, ``t > 0``.
    rule : QuadratureRule
        Half-line rule in the spectral variable y.
    """

    h_values: FloatArray
    t: float
    rule: QuadratureRule
    _coefficients: FloatArray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise DomainError("Howland weight needs t > 0")
        h = np.asarray(self.h_values, dtype=float)
        if h.shape != self.rule.nodes.shape:
            raise DomainError("envelope must be tabulated on the rule nodes")
        coeff = self.rule.weights * h**2 * np.exp(-2.0 * self.t / self.rule.nodes)
        object.__setattr__(self, "_coefficients", coeff)

    @classmethod
    def from_envelope(
        cls, envelope: Envelope, t: float, rule: QuadratureRule
    ) -> "HowlandWeight":
        """Tabulate ``envelope`` on ``rule`` and build the weight."""
        return cls(h_values=envelope(rule.nodes), t=t, rule=rule)

    def evaluate(self, t: FloatArray) -> FloatArray:
        out = np.zeros_like(t)
        for c, y in zip(self._coefficients, self.rule.nodes, strict=True):
            if c != 0.0:
                out += c * np.exp(-t * y)
        return out

    def hankel_factor(self, nodes: FloatArray, x: float) -> FloatArray:
        """F with (F F^T)_ij = phi(y_i + y_j + 2x; t) for ``y = nodes``."""
        return np.exp(-np.multiply.outer(nodes + x, self.rule.nodes)) * np.sqrt(
            self._coefficients
        )

    def at(self, x: float, t: float) -> float:
        """phi(x; t) as a function of both light-cone variables."""
        y = self.rule.nodes
        h2 = self.rule.weights * np.asarray(self.h_values, dtype=float) ** 2
        return float(np.sum(h2 * np.exp(-x * y - 2.0 * t / y)))


@dataclass(frozen=True)
class BesselK1(ScatteringFunction):
    """phi(u) = sqrt(4s/u) K_1(2 sqrt(s u)) = int exp(-u y - s/y) dy."""

    s: float
    singular_at_zero = True

    def __post_init__(self) -> None:
        if not self.s > 0:
            raise DomainError("Bessel scattering needs s > 0")

    def evaluate(self, t: FloatArray) -> FloatArray:
        if np.any(t <= 0):
            raise DomainError("Bessel scattering is defined for u > 0")
        return np.sqrt(4.0 * self.s / t) * bessel_k_values(1.0, 2.0 * np.sqrt(self.s * t))


@dataclass(frozen=True)
class AiryHalf(ScatteringFunction):
    """phi(t) = Ai(t / 2)."""

    def evaluate(self, t: FloatArray) -> FloatArray:
        values, _ = airy_values(0.5 * t)
        return values


@dataclass(frozen=True)
class RankOneExp(ScatteringFunction):
    """phi(t) = exp(-c t)."""

    c: float = 1.0

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise DomainError("rank-one exponent must be positive")

    def evaluate(self, t: FloatArray) -> FloatArray:
        return np.exp(-self.c * t)


@dataclass(frozen=True)
class ZeroScattering(ScatteringFunction):
    """phi = 0."""

    def evaluate(self, t: FloatArray) -> FloatArray:
        return np.zeros_like(t)


@dataclass(frozen=True, eq=False)
class Tabulated(ScatteringFunction):
    """Cubic-spline interpolant of sampled values, zero past the last sample."""

    t_samples: FloatArray
    values: FloatArray
    _spline: CubicSpline = field(init=False, repr=False)

    def __post_init__(self) -> None:
        t = np.asarray(self.t_samples, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size < 4:  # noqa: PLR2004
            raise DomainError("need at least four matching samples")
        if t[0] < 0 or np.any(np.diff(t) <= 0):
            raise DomainError("sample points must be increasing and nonnegative")
        object.__setattr__(self, "_spline", CubicSpline(t, v, extrapolate=False))

    @classmethod
    def from_function(
        cls, fn: Callable[[FloatArray], FloatArray], t_max: float, samples: int = 4001
    ) -> "Tabulated":
        """Sample ``fn`` uniformly on [0, t_max]."""
        t = np.linspace(0.0, t_max, samples)
        return cls(t_samples=t, values=fn(t))

    def evaluate(self, t: FloatArray) -> FloatArray:
        if np.any(t < self.t_samples[0]):
            raise DomainError("tabulated scattering evaluated below its first sample")
        out = self._spline(t)
        return np.where(np.isnan(out), 0.0, out)


@dataclass(frozen=True)
class ScatteringSpec:
    """A scattering function with the shift phi_(x)(t) = phi(t + 2x)."""

    function: ScatteringFunction
    shift: float = 0.0

    def __post_init__(self) -> None:
        if not (self.shift >= 0 and math.isfinite(self.shift)):
            raise DomainError("shift must be a finite real >= 0")
        if self.function.singular_at_zero and self.shift == 0:
            raise AdmissibilityError(
                f"{type(self.function).__name__} has a divergent Hilbert-Schmidt "
                "norm without a positive shift"
            )

    def values(self, t: ArrayLike) -> FloatArray:
        """phi(t + 2x)."""
        return self.function.evaluate(np.asarray(t, dtype=float) + 2.0 * self.shift)

    def shifted(self, x: float) -> "ScatteringSpec":
        """The same function at another shift."""
        return ScatteringSpec(self.function, x)

    def hs_estimate(self, rule: QuadratureRule) -> float:
        """Quadrature estimate of int_0^inf t phi(t + 2x)^2 dt."""
        y = rule.nodes
        return float(np.dot(rule.weights, y * self.values(y) ** 2))


__all__ = [
    "ENVELOPES",
    "AiryHalf",
    "BesselK1",
    "Envelope",
    "HowlandWeight",
    "RankOneExp",
    "ScatteringFunction",
    "ScatteringSpec",
    "Tabulated",
    "ZeroScattering",
    "envelope_by_name",
]
