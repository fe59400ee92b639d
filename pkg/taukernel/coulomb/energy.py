"""Logarithmic energy of piecewise-constant densities and the free LSI check.

A density on [a, b] is represented by masses m_i on m equal cells of width h.
With G(u) = u^2 log|u| / 2 - 3u^2/4, so that G'' = log|u|,

    int_cell_i int_cell_j log|x - y| dx dy = G(d + h) - 2 G(d) + G(d - h),  d = (i - j) h,

and the energy int V rho + int int log(1/|x - y|) rho rho is the quadratic form
m . V_bar + m^T L m with no quadrature of the singularity.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from taukernel.config import defaults
from taukernel.core.errors import ConvergenceError, DomainError
from taukernel.coulomb.hilbert import arcsine_rule
from taukernel.coulomb.measures import TWO_PI, EquilibriumMeasure, sigma0_measure
from taukernel.coulomb.potentials import Potential, U0Potential
from taukernel.specfun import gauss_legendre

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

CELL_NODES = 8
ORACLE_CELLS = 60
ORACLE_ITERATIONS = 5000
ENERGY_CELLS = 400
MASS_TOL = 1e-6
LSI_NODES = 151


def _g(u: FloatArray) -> FloatArray:
    with np.errstate(divide="ignore", invalid="ignore"):
        value = 0.5 * u**2 * np.log(np.abs(u)) - 0.75 * u**2
    return np.where(u == 0, 0.0, value)


def cell_log_kernel(a: float, b: float, m: int) -> FloatArray:
    """L_ij = -(1/h^2) int int log|x - y| over cells i and j.

    The returned matrix acts on masses: energy = m^T L m.
    """
    if not b > a or m < 1:
        raise DomainError("need a < b and at least one cell")
    h = (b - a) / m
    d = np.subtract.outer(np.arange(m), np.arange(m)) * h
    return -(_g(d + h) - 2.0 * _g(d) + _g(d - h)) / h**2


def cell_average(f: Callable[[FloatArray], FloatArray], a: float, b: float, m: int) -> FloatArray:
    """(1/h) int_cell f for each of the m cells."""
    h = (b - a) / m
    base = gauss_legendre(CELL_NODES, (0.0, h))
    left = a + h * np.arange(m)
    points = left[:, None] + base.nodes[None, :]
    return (f(points) @ base.weights) / h


def cell_masses(measure: EquilibriumMeasure, m: int) -> FloatArray:
    """Exact-to-quadrature cell masses of a closed-form measure."""
    a, b = measure.a, measure.b
    h = (b - a) / m
    edges = a + h * np.arange(m + 1)
    # integrate in theta so the edge weight stays smooth
    theta = np.arcsin(np.sqrt(np.clip((edges - a) / (b - a), 0.0, 1.0)))
    base = gauss_legendre(CELL_NODES, (0.0, 1.0))
    masses = np.empty(m)
    for i in range(m):
        lo, hi = theta[i], theta[i + 1]
        t = lo + (hi - lo) * base.nodes
        y = a + (b - a) * np.sin(t) ** 2
        jac = (b - a) * np.sin(2.0 * t)
        masses[i] = (hi - lo) * float(np.dot(base.weights, measure.density(y) * jac))
    return masses


def _check_masses(masses: FloatArray) -> None:
    if np.any(masses < -1e-14):
        raise DomainError("densities must be nonnegative")
    total = float(np.sum(masses))
    if abs(total - 1.0) > MASS_TOL:
        raise DomainError(f"density is not normalized: total mass {total:.12g}")


def energy_functional(
    potential: Potential,
    a: float,
    b: float,
    masses: FloatArray,
    *,
    scale: float = TWO_PI,
) -> float:
    """E(rho) = int V rho + int int log(1/|x - y|) rho rho with V = scale * potential.

    Raises
    ------
    DomainError
        If the masses are negative or do not sum to one.
    """
    masses = np.asarray(masses, dtype=float)
    _check_masses(masses)
    m = masses.size
    v_bar = scale * cell_average(potential.value, a, b, m)
    kernel = cell_log_kernel(a, b, m)
    return float(masses @ v_bar + masses @ kernel @ masses)


def measure_energy(
    measure: EquilibriumMeasure, potential: Potential, m: int = ENERGY_CELLS, scale: float = TWO_PI
) -> float:
    """Energy of a closed-form measure on m cells of its support."""
    return energy_functional(potential, measure.a, measure.b, cell_masses(measure, m), scale=scale)


def project_simplex(v: FloatArray) -> FloatArray:
    """Euclidean projection onto {m >= 0, sum m = 1}."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    rho = int(np.nonzero(u - css / idx > 0)[0][-1])
    tau = css[rho] / (rho + 1.0)
    return np.maximum(v - tau, 0.0)


@dataclass(frozen=True, eq=False)
class DiscreteEquilibrium:
    """Projected-gradient minimizer of the cell energy."""

    a: float
    b: float
    masses: FloatArray
    energy: float
    iterations: int
    step_norm: float


def discrete_equilibrium(
    potential: Potential,
    a: float,
    b: float,
    m: int = ORACLE_CELLS,
    *,
    iterations: int = ORACLE_ITERATIONS,
    scale: float = TWO_PI,
) -> DiscreteEquilibrium:
    """Minimize m . V_bar + m^T L m over the simplex from uniform masses.

    The step is 1/(2 lambda_max(L)), the inverse Lipschitz constant of the gradient.

    Raises
    ------
    ConvergenceError
        If the iterates stop being finite.
    """
    v_bar = scale * cell_average(potential.value, a, b, m)
    kernel = cell_log_kernel(a, b, m)
    sym = 0.5 * (kernel + kernel.T)
    step = 1.0 / (2.0 * float(np.max(np.linalg.eigvalsh(sym))))
    masses = np.full(m, 1.0 / m)
    moved = 0.0
    for _ in range(iterations):
        gradient = v_bar + 2.0 * sym @ masses
        updated = project_simplex(masses - step * gradient)
        moved = float(np.max(np.abs(updated - masses)))
        masses = updated
    if not np.all(np.isfinite(masses)):
        raise ConvergenceError("projected gradient produced non-finite masses", [moved])
    energy = float(masses @ v_bar + masses @ kernel @ masses)
    logger.debug("discrete equilibrium on %d cells: energy %.10f, last move %.2e", m, energy, moved)
    return DiscreteEquilibrium(
        a=a, b=b, masses=masses, energy=energy, iterations=iterations, step_norm=moved
    )


def perturbed_measure(
    measure: EquilibriumMeasure, coefficients: FloatArray | list[float]
) -> EquilibriumMeasure:
    """rho (1 + sum_k c_k cos(k pi (x - a)/(b - a))) renormalized to unit mass.

    Raises
    ------
    DomainError
        If the perturbation makes the density negative somewhere.
    """
    coeffs = np.asarray(coefficients, dtype=float)
    a, b = measure.a, measure.b
    g = measure.factor
    ks = np.arange(1, coeffs.size + 1)

    def bump(y: FloatArray) -> FloatArray:
        phase = np.pi * (np.asarray(y)[..., None] - a) / (b - a)
        return 1.0 + np.cos(phase * ks) @ coeffs

    probe = np.linspace(a, b, 401)
    if np.any(bump(probe) <= 0):
        raise DomainError("perturbation makes the density negative")
    raw = EquilibriumMeasure(
        a=a, b=b, factor=lambda y: g(y) * bump(y), edge=measure.edge, label="perturbed"
    )
    return raw.scaled(1.0 / raw.mass)


def beta_bump_measure(a: float, b: float) -> EquilibriumMeasure:
    """6 (x - a)(b - x)/(b - a)^3, the rescaled Beta(2, 2) density."""
    c = 6.0 / (b - a) ** 3

    def factor(y: FloatArray) -> FloatArray:
        return c * np.sqrt(np.clip((b - y) * (y - a), 0.0, None))

    return EquilibriumMeasure(a=a, b=b, factor=factor, label="beta22")


@dataclass(frozen=True)
class LSIResult:
    """E(p) - E(sigma_0) against the free log-Sobolev bound."""

    xi: float
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= -defaults.LSI_SLACK


def fisher_term(measure: EquilibriumMeasure, potential: Potential, scale: float = TWO_PI) -> float:
    """int (2 pi H p - V')^2 p on the support of p."""
    rule = arcsine_rule(measure.a, measure.b, measure.edge, LSI_NODES)
    y = rule.nodes
    field = TWO_PI * measure.hilbert(y) - scale * potential.derivative(y)
    return float(np.dot(rule.weights, field**2 * measure.factor(y)))


def free_lsi_check(xi: float, p: EquilibriumMeasure, m: int = ENERGY_CELLS) -> LSIResult:
    """lhs = E(p) - E(sigma_0), rhs = 2/(2 pi (8 xi - 2)) int (2 pi H p - V')^2 p.

    Raises
    ------
    DomainError
        If xi is outside (1/4, 1/2) or p is not supported in [a, b].
    """
    if not 0.25 < xi < 0.5:
        raise DomainError(f"the free LSI check needs xi in (1/4, 1/2), got {xi}")
    sigma = sigma0_measure(xi)
    if p.a < sigma.a - 1e-12 or p.b > sigma.b + 1e-12:
        raise DomainError("p must be supported in the support of sigma_0")
    potential = U0Potential(xi)
    constant = 2.0 / (TWO_PI * (8.0 * xi - 2.0))
    # both energies on the same cells of [a, b]
    e_sigma = measure_energy(sigma, potential, m)
    e_p = energy_functional(potential, sigma.a, sigma.b, _masses_on(p, sigma, m))
    lhs = e_p - e_sigma
    rhs = constant * fisher_term(p, potential)
    logger.debug("free LSI at xi=%g: lhs %.3e rhs %.3e", xi, lhs, rhs)
    return LSIResult(xi=xi, lhs=lhs, rhs=rhs)


def _masses_on(p: EquilibriumMeasure, support: EquilibriumMeasure, m: int) -> FloatArray:
    if math.isclose(p.a, support.a) and math.isclose(p.b, support.b):
        return cell_masses(p, m)
    raise DomainError("p must share the cell grid of sigma_0")


@dataclass(frozen=True, eq=False)
class MinimalityCheck:
    """Energies of random normalized perturbations of sigma_0."""

    xi: float
    sigma_energy: float
    perturbed_energies: FloatArray

    @property
    def min_gap(self) -> float:
        return float(np.min(self.perturbed_energies) - self.sigma_energy)


def minimality_check(
    xi: float,
    count: int = 20,
    *,
    seed: int = 0,
    amplitude: float = 0.3,
    modes: int = 3,
    m: int = ENERGY_CELLS,
) -> MinimalityCheck:
    """E(sigma_0) against ``count`` cosine perturbations with a seeded generator.

    Coefficients are drawn uniformly with sum |c_k| <= amplitude < 1, so every
    perturbed density stays positive.
    """
    if not 0 < amplitude < 1:
        raise DomainError("amplitude must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    sigma = sigma0_measure(xi)
    potential = U0Potential(xi)
    base = measure_energy(sigma, potential, m)
    energies = np.empty(count)
    for i in range(count):
        raw = rng.uniform(-1.0, 1.0, modes)
        coeffs = amplitude * raw / max(float(np.sum(np.abs(raw))), 1e-12)
        energies[i] = measure_energy(perturbed_measure(sigma, coeffs), potential, m)
    return MinimalityCheck(xi=xi, sigma_energy=base, perturbed_energies=energies)


__all__ = [
    "DiscreteEquilibrium",
    "LSIResult",
    "MinimalityCheck",
    "beta_bump_measure",
    "cell_average",
    "cell_log_kernel",
    "cell_masses",
    "discrete_equilibrium",
    "energy_functional",
    "fisher_term",
    "free_lsi_check",
    "measure_energy",
    "minimality_check",
    "perturbed_measure",
    "project_simplex",
]
