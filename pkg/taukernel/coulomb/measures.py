"""Equilibrium measures in closed form and their support endpoints.

Every measure here minimizes int V rho + int int log(1/|x - y|) rho rho with
V = 2 pi u for the scaled potentials, so on the support
2 PV int rho(y) / (x - y) dy = V'(x). Endpoints of a soft-edged support
solve int V'/sqrt = 0 and int x V'/sqrt = 2 pi, the second being unit mass.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import optimize

from taukernel.core.errors import AdmissibilityError, ConvergenceError, DomainError
from taukernel.coulomb.hilbert import (
    Edge,
    SmoothFactor,
    arcsine_rule,
    edge_weight,
    hilbert_transform,
)
from taukernel.coulomb.potentials import (
    Potential,
    U0Potential,
    VSXPotential,
    correction_derivative,
)

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class EquilibriumMeasure:
    """rho(y) = w(y) g(y) on (a, b) with an arcsine-type edge weight w.

    Attributes
    ----------
    a, b : float
        Support endpoints, 0 < a < b.
    factor : callable
        The smooth factor g.
    edge : {"soft", "hard"}
        Soft edges vanish like a square root, hard edges blow up like its inverse.
    label : str
        Short name used in artifacts.
    parameters : dict
        The closed-form parameters, e.g. ``{"xi": 0.1}``.
    """

    a: float
    b: float
    factor: SmoothFactor
    edge: Edge = "soft"
    label: str = "measure"
    parameters: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0 < self.a < self.b:
            raise DomainError(f"support must satisfy 0 < a < b, got ({self.a}, {self.b})")

    def density(self, x: ArrayLike) -> FloatArray:
        """rho(x), zero outside (a, b)."""
        x = np.asarray(x, dtype=float)
        inside = (x > self.a) & (x < self.b)
        g = self.factor(np.where(inside, x, 0.5 * (self.a + self.b)))
        return np.where(inside, edge_weight(self.a, self.b, self.edge, x) * g, 0.0)

    def __call__(self, x: ArrayLike) -> FloatArray:
        return self.density(x)

    def integrate(self, f: Callable[[FloatArray], FloatArray], n: int = 200) -> float:
        """int f rho over (a, b)."""
        rule = arcsine_rule(self.a, self.b, self.edge, n)
        return rule.integrate(lambda y: f(y) * self.factor(y))

    @property
    def mass(self) -> float:
        return self.integrate(np.ones_like)

    def moments(self, k_max: int) -> FloatArray:
        """int y^k rho for k = 0..k_max."""
        return np.array([self.integrate(lambda y, k=k: y**k) for k in range(k_max + 1)])

    def hilbert(self, x: ArrayLike) -> FloatArray:
        """(1/pi) PV int rho(y) / (x - y) dy."""
        return hilbert_transform(self.factor, self.a, self.b, x, self.edge)

    def field_residual(self, potential: Potential, x: ArrayLike, scale: float = TWO_PI) -> FloatArray:
        """|2 pi H rho - V'| with V = scale * potential."""
        x = np.asarray(x, dtype=float)
        return np.abs(TWO_PI * self.hilbert(x) - scale * potential.derivative(x))

    def log_potential(self, z: ArrayLike, n: int = 400) -> NDArray[np.complex128]:
        """int log(z - y) rho(y) dy with the principal branch, for z off [a, b]."""
        zz = np.atleast_1d(np.asarray(z, dtype=complex))
        rule = arcsine_rule(self.a, self.b, self.edge, n)
        values = np.log(zz[:, None] - rule.nodes[None, :])
        return values @ (rule.weights * self.factor(rule.nodes))

    def scaled(self, factor: float) -> "EquilibriumMeasure":
        """The same support with g multiplied by ``factor``."""
        g = self.factor
        return EquilibriumMeasure(
            a=self.a,
            b=self.b,
            factor=lambda y: factor * g(y),
            edge=self.edge,
            label=self.label,
            parameters=dict(self.parameters),
        )


# endpoints -----------------------------------------------------------------


@dataclass(frozen=True)
class Endpoints:
    """Support endpoints from the closed forms and from a root-find."""

    a: float
    b: float
    a_numeric: float
    b_numeric: float
    residuals: tuple[float, float]
    closed_form_agreement: float = 0.0

    @property
    def discrepancy(self) -> float:
        return max(abs(self.a - self.a_numeric), abs(self.b - self.b_numeric))


def constraint_integrals(
    derivative: Callable[[FloatArray], FloatArray], a: float, b: float
) -> tuple[float, float]:
    """int V'/sqrt((b-x)(x-a)) and int x V'/sqrt((b-x)(x-a)) over (a, b)."""
    rule = arcsine_rule(a, b, "hard")
    return (
        rule.integrate(derivative),
        rule.integrate(lambda y: y * derivative(y)),
    )


def solve_endpoints(
    derivative: Callable[[FloatArray], FloatArray],
    guess: tuple[float, float],
    *,
    target: float = TWO_PI,
) -> tuple[float, float, tuple[float, float]]:
    """Root-find (a, b) with int V'/sqrt = 0 and int x V'/sqrt = target.

    The unknowns are log a and log(b - a), which keeps 0 < a < b.

    Raises
    ------
    ConvergenceError
        If the root-finder fails; the final residuals are attached.
    """

    def equations(p: FloatArray) -> list[float]:
        a = math.exp(p[0])
        b = a + math.exp(p[1])
        first, second = constraint_integrals(derivative, a, b)
        return [first, second - target]

    start = np.array([math.log(guess[0]), math.log(guess[1] - guess[0])])
    result: Any = optimize.root(equations, start, method="hybr", options={"xtol": 1e-14})
    residuals = tuple(float(r) for r in result.fun)
    if max(abs(r) for r in residuals) > 1e-10:
        raise ConvergenceError(f"endpoint root-find failed: {result.message}", residuals)
    a = math.exp(result.x[0])
    return a, a + math.exp(result.x[1]), (residuals[0], residuals[1])


def _endpoints_prop(xi: float) -> tuple[float, float]:
    scale = 4.0 * math.pi * xi / (TWO_PI - 1.0) ** 2
    root = math.sqrt(4.0 * math.pi - 1.0)
    return scale * (TWO_PI - root), scale * (TWO_PI + root)


def _endpoints_mean_form(xi: float) -> tuple[float, float]:
    shifted = math.pi - 0.5
    centre = 2.0 * math.pi**2 * xi / shifted**2
    half = 2.0 * math.pi * xi / shifted * math.sqrt(math.pi**2 / shifted**2 - 1.0)
    return centre - half, centre + half


def endpoints_u0(xi: float, *, cross_check: bool = True) -> Endpoints:
    """a, b = 4 pi xi (2 pi -/+ sqrt(4 pi - 1)) / (2 pi - 1)^2.

    The centre/half-width form of the same endpoints and a numerical solution
    of the two constraint integrals are reported alongside.
    """
    if not 0 < xi < 0.5:
        raise DomainError(f"xi must lie in (0, 1/2), got {xi}")
    a, b = _endpoints_prop(xi)
    a2, b2 = _endpoints_mean_form(xi)
    agreement = max(abs(a - a2), abs(b - b2))
    if not cross_check:
        return Endpoints(a, b, a, b, (0.0, 0.0), agreement)
    potential = U0Potential(xi)

    def derivative(y: FloatArray) -> FloatArray:
        return TWO_PI * potential.derivative(y)

    a_num, b_num, residuals = solve_endpoints(derivative, (0.8 * a, 1.2 * b))
    return Endpoints(a, b, a_num, b_num, residuals, agreement)


def critical_xi() -> float:
    """xi* with b(xi*) = 1; the support of sigma_0 lies in (0, 1) only below it."""
    return (TWO_PI - 1.0) ** 2 / (4.0 * math.pi * (TWO_PI + math.sqrt(4.0 * math.pi - 1.0)))


# sigma_0 and its correction --------------------------------------------------


def sigma0_measure(xi: float) -> EquilibriumMeasure:
    """sigma_0 = (2 sqrt((b-x)(x-a)) / sqrt(ab)) (xi(a+b)/(abx) + 2 xi/x^2 - 1/x)."""
    ends = endpoints_u0(xi, cross_check=False)
    a, b = ends.a, ends.b
    ab = a * b
    lead = 2.0 / math.sqrt(ab)

    def factor(y: FloatArray) -> FloatArray:
        return lead * (xi * (a + b) / (ab * y) + 2.0 * xi / y**2 - 1.0 / y)

    return EquilibriumMeasure(a=a, b=b, factor=factor, label="sigma0", parameters={"xi": xi})


def sigma0_density(xi: float, x: ArrayLike) -> FloatArray:
    """sigma_0(x), zero outside (a, b)."""
    return sigma0_measure(xi).density(x)


def _check_below_one(xi: float, b: float) -> None:
    if b >= 1.0:
        raise AdmissibilityError(
            f"the correction needs b < 1; xi={xi} gives b={b:.6f}, "
            f"admissible xi < {critical_xi():.6f}"
        )


def rho_tilde_measure(xi: float) -> EquilibriumMeasure:
    """rho~ = (sqrt((1-a)(1-b))/(1-x) + 1 + 2 sqrt((2-a)(2-b))/(x-2)) / (2 sqrt((b-x)(x-a))).

    Raises
    ------
    DomainError
        If ``xi`` is at or above the critical value.
    """
    ends = endpoints_u0(xi, cross_check=False)
    a, b = ends.a, ends.b
    _check_below_one(xi, b)
    near = math.sqrt((1.0 - a) * (1.0 - b))
    far = math.sqrt((2.0 - a) * (2.0 - b))

    def factor(y: FloatArray) -> FloatArray:
        return 0.5 * (near / (1.0 - y) + 1.0 + 2.0 * far / (y - 2.0))

    return EquilibriumMeasure(
        a=a, b=b, factor=factor, edge="hard", label="rho_tilde", parameters={"xi": xi}
    )


def correction_rho_tilde(xi: float, x: ArrayLike) -> FloatArray:
    """rho~(x), zero outside (a, b)."""
    return rho_tilde_measure(xi).density(x)


def correction_pv_residual(xi: float, x: ArrayLike) -> FloatArray:
    """|(1/pi) PV int rho~(y)/(x - y) dy - f'(x)|."""
    measure = rho_tilde_measure(xi)
    x = np.asarray(x, dtype=float)
    return np.abs(measure.hilbert(x) - correction_derivative(x))


@dataclass(frozen=True, eq=False)
class CorrectedMoments:
    """Moments of sigma_0 and of sigma_0 + rho~/n."""

    xi: float
    n: int
    base: FloatArray
    corrected: FloatArray

    @property
    def scaled_difference(self) -> FloatArray:
        """n (corrected - base), the moments of rho~."""
        return self.n * (self.corrected - self.base)


def corrected_moments(xi: float, n: int, k_max: int = 3) -> CorrectedMoments:
    """Moments 0..k_max of rho_n = sigma_0 + rho~/n next to those of sigma_0."""
    if n < 1:
        raise DomainError("n must be at least 1")
    base = sigma0_measure(xi).moments(k_max)
    correction = rho_tilde_measure(xi).moments(k_max)
    return CorrectedMoments(xi=xi, n=n, base=base, corrected=base + correction / n)


# the v(z) example ------------------------------------------------------------


def vsx_quartic_endpoints(alpha: float, s: float, x: float) -> tuple[float, float]:
    """Endpoints from sqrt(sx) p^4 - alpha p^3 - (alpha + 2) p - sqrt(sx) = 0, p = sqrt(ab).

    The quartic has exactly one positive root; (a + b)/2 = (alpha + 2)/sqrt(sx) + 1/p.
    """
    c = math.sqrt(s * x)
    roots = np.roots([c, -alpha, 0.0, -(alpha + 2.0), -c])
    real = [r.real for r in roots if abs(r.imag) < 1e-9 * max(1.0, abs(r)) and r.real > 0]
    if len(real) != 1:
        raise ConvergenceError("expected a single positive root of the endpoint quartic")
    p = real[0]
    centre = (alpha + 2.0) / c + 1.0 / p
    half = math.sqrt(centre**2 - p**2)
    return centre - half, centre + half


def example_density_vsx(alpha: float, s: float, x: float) -> tuple[EquilibriumMeasure, Endpoints]:
    """rho(z) = sqrt((b-z)(z-a))/(2 pi sqrt(ab)) [alpha/z + c/z^2 + (c/(2z))(1/a + 1/b)], c = sqrt(sx).

    Endpoints come from the root-find on the constraint integrals and are
    compared with the quartic.
    """
    potential = VSXPotential(alpha=alpha, s=s, x=x)
    c = potential.coupling
    a_q, b_q = vsx_quartic_endpoints(alpha, s, x)
    a, b, residuals = solve_endpoints(potential.derivative, (0.7 * a_q, 1.3 * b_q))
    ends = Endpoints(a, b, a_q, b_q, residuals)
    if ends.discrepancy > 1e-9 * b:
        logger.warning("v(z) endpoints: root-find and quartic differ by %.3e", ends.discrepancy)
    lead = 1.0 / (TWO_PI * math.sqrt(a * b))
    inverse_sum = 1.0 / a + 1.0 / b

    def factor(z: FloatArray) -> FloatArray:
        return lead * (alpha / z + c / z**2 + 0.5 * c * inverse_sum / z)

    measure = EquilibriumMeasure(
        a=a,
        b=b,
        factor=factor,
        label="vsx",
        parameters={"alpha": alpha, "s": s, "x": x},
    )
    return measure, ends


def log_potential_curve(measure: EquilibriumMeasure, z_values: ArrayLike) -> NDArray[np.complex128]:
    """int log(z - y) rho(y) dy at complex z."""
    return measure.log_potential(z_values)


def normalization_error(measure: EquilibriumMeasure) -> float:
    return abs(measure.mass - 1.0)


def interior_points(measure: EquilibriumMeasure) -> FloatArray:
    """a + 0.2(b - a), the midpoint and b - 0.2(b - a)."""
    a, b = measure.a, measure.b
    return np.array([a + 0.2 * (b - a), 0.5 * (a + b), b - 0.2 * (b - a)])


def singular_integral_residual(xi: float) -> float:
    """max |2 pi H sigma_0 - 2 pi u_0'| at the three interior points."""
    measure = sigma0_measure(xi)
    return float(np.max(measure.field_residual(U0Potential(xi), interior_points(measure))))


__all__ = [
    "CorrectedMoments",
    "Endpoints",
    "EquilibriumMeasure",
    "constraint_integrals",
    "corrected_moments",
    "correction_pv_residual",
    "correction_rho_tilde",
    "critical_xi",
    "endpoints_u0",
    "example_density_vsx",
    "interior_points",
    "log_potential_curve",
    "normalization_error",
    "rho_tilde_measure",
    "sigma0_density",
    "sigma0_measure",
    "singular_integral_residual",
    "solve_endpoints",
    "vsx_quartic_endpoints",
]
