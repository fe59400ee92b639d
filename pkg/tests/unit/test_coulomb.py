"""Tests for equilibrium measures, logarithmic energies and linear statistics."""

import math

import numpy as np
import pytest

from taukernel.config import defaults
from taukernel.core.errors import AdmissibilityError, DomainError
from taukernel.coulomb import (
    U0Potential,
    UNPotential,
    VSXPotential,
    arcsine_rule,
    beta_bump_measure,
    cell_log_kernel,
    corrected_moments,
    correction_pv_residual,
    correction_rho_tilde,
    critical_xi,
    discrete_equilibrium,
    edge_weight,
    endpoints_u0,
    energy_functional,
    example_density_vsx,
    free_lsi_check,
    interior_points,
    linear_statistic,
    log_potential_curve,
    measure_energy,
    minimality_check,
    normalization_error,
    perturbed_measure,
    principal_value,
    project_simplex,
    rho_tilde_measure,
    sigma0_density,
    sigma0_measure,
    singular_integral_residual,
    un_potential,
    variance_double_integral,
    vsx_quartic_endpoints,
)


def test_endpoints() -> None:
    """Closed forms, their alternative form and the root-find agree at xi = 0.1."""
    ends = endpoints_u0(0.1)
    assert ends.a == pytest.approx(0.129766, abs=1e-4)
    assert ends.b == pytest.approx(0.43600, abs=1e-4)
    assert ends.closed_form_agreement <= defaults.ENDPOINT_TOL
    assert ends.discrepancy <= 1e-9
    assert max(abs(r) for r in ends.residuals) <= 1e-10


def test_endpoints_scale_with_xi() -> None:
    """Both endpoints are linear in xi."""
    small = endpoints_u0(0.05, cross_check=False)
    large = endpoints_u0(0.2, cross_check=False)
    assert large.a == pytest.approx(4.0 * small.a, rel=1e-12)
    assert large.b == pytest.approx(4.0 * small.b, rel=1e-12)


@pytest.mark.parametrize("xi", [0.0, 0.5, 0.7])
def test_endpoints_reject_xi(xi: float) -> None:
    """xi must lie in (0, 1/2)."""
    with pytest.raises(DomainError):
        endpoints_u0(xi)


def test_critical_xi() -> None:
    """b(xi*) = 1."""
    xi_star = critical_xi()
    assert xi_star == pytest.approx(0.2294, abs=1e-4)
    assert endpoints_u0(xi_star, cross_check=False).b == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("xi", [0.1, 0.3])
def test_sigma0_is_normalized(xi: float) -> None:
    """sigma_0 has unit mass."""
    assert normalization_error(sigma0_measure(xi)) <= defaults.NORMALIZATION_TOL


def test_sigma0_vanishes_off_support() -> None:
    """The density is zero outside (a, b)."""
    measure = sigma0_measure(0.1)
    outside = np.array([0.5 * measure.a, measure.a, measure.b, 2.0 * measure.b])
    assert np.all(sigma0_density(0.1, outside) == 0.0)


def test_log_potential_curve() -> None:
    """Far from the support the log potential is log z; it is conjugate symmetric."""
    measure = sigma0_measure(0.1)
    far, upper, lower = log_potential_curve(measure, [100.0, 0.3 + 1.0j, 0.3 - 1.0j])
    assert far.imag == pytest.approx(0.0, abs=1e-12)
    assert 0.0 < math.log(100.0) - far.real < 5e-3
    assert lower == pytest.approx(upper.conjugate(), abs=1e-12)


def test_singular_integral() -> None:
    """2 pi H sigma_0 = 2 pi u_0' inside the support."""
    assert singular_integral_residual(0.1) <= defaults.SINGULAR_INTEGRAL_TOL


def test_correction_measure() -> None:
    """rho~ has zero mass and H rho~ = f' below the critical xi."""
    assert abs(rho_tilde_measure(0.1).mass) <= defaults.CORRECTION_TOL
    points = interior_points(sigma0_measure(0.1))
    assert np.max(correction_pv_residual(0.1, points)) <= defaults.PV_TOL
    measure = rho_tilde_measure(0.1)
    inside = interior_points(measure)
    assert np.array_equal(correction_rho_tilde(0.1, inside), measure.density(inside))
    assert correction_rho_tilde(0.1, 2.0 * measure.b) == 0.0
    with pytest.raises(AdmissibilityError):
        rho_tilde_measure(0.3)


def test_corrected_moments() -> None:
    """sigma_0 + rho~/n keeps unit mass."""
    moments = corrected_moments(0.1, 10)
    assert moments.corrected[0] == pytest.approx(1.0, abs=1e-6)
    assert moments.scaled_difference[0] == pytest.approx(0.0, abs=1e-6)
    with pytest.raises(DomainError):
        corrected_moments(0.1, 0)


def test_vsx_example() -> None:
    """The v(z) density is normalized and its endpoints solve the quartic."""
    measure, ends = example_density_vsx(1.0, 1.0, 1.0)
    assert normalization_error(measure) <= defaults.NORMALIZATION_TOL
    assert ends.discrepancy <= 1e-8
    a, b = vsx_quartic_endpoints(1.0, 1.0, 1.0)
    assert 0 < a < 1 < b


def test_potentials() -> None:
    """u_0 has its minimum at 2 xi; u_n and v(z) are convex there."""
    u0 = U0Potential(0.1)
    assert float(u0.derivative(0.2)) == pytest.approx(0.0, abs=1e-12)
    assert u0.is_convex_at(0.2)
    _, report = un_potential(10, 0.1)
    assert report.convex
    assert VSXPotential(1.0, 1.0, 1.0).is_convex_at(np.linspace(0.1, 5.0, 20))
    with pytest.raises(DomainError):
        U0Potential(0.6)
    with pytest.raises(DomainError):
        UNPotential(5, 0.1).value(1.0)
    with pytest.raises(DomainError):
        VSXPotential(0.0, 1.0, 1.0)


def test_arcsine_rule_weights() -> None:
    """Soft weights integrate to pi (b-a)^2/8, hard weights to pi."""
    soft = arcsine_rule(1.0, 3.0, "soft")
    hard = arcsine_rule(1.0, 3.0, "hard")
    assert soft.integrate(np.ones_like) == pytest.approx(math.pi / 2.0, rel=1e-12)
    assert hard.integrate(np.ones_like) == pytest.approx(math.pi, rel=1e-12)
    with pytest.raises(DomainError):
        arcsine_rule(1.0, 3.0, "flat")  # type: ignore[arg-type]
    assert np.all(edge_weight(1.0, 3.0, "hard", [0.5, 3.5]) == 0.0)


def test_principal_values_of_constants() -> None:
    """PV of the bare edge weights: pi (x - centre) for soft, 0 for hard."""
    x = np.array([1.5, 2.0, 2.7])
    soft = principal_value(np.ones_like, 1.0, 3.0, x, "soft")
    hard = principal_value(np.ones_like, 1.0, 3.0, x, "hard")
    assert np.allclose(soft, math.pi * (x - 2.0), atol=1e-12)
    assert np.allclose(hard, 0.0, atol=1e-12)
    with pytest.raises(DomainError):
        principal_value(np.ones_like, 1.0, 3.0, [3.0])


def test_cell_log_kernel() -> None:
    """The cell kernel is symmetric and constant along diagonals."""
    kernel = cell_log_kernel(0.0, 1.0, 6)
    assert np.allclose(kernel, kernel.T)
    assert np.allclose(np.diag(kernel), kernel[0, 0])
    with pytest.raises(DomainError):
        cell_log_kernel(1.0, 0.0, 6)


def test_energy_rejects_bad_masses() -> None:
    """Masses must be nonnegative and sum to one."""
    potential = U0Potential(0.1)
    with pytest.raises(DomainError):
        energy_functional(potential, 0.1, 0.4, np.full(4, 0.3))
    with pytest.raises(DomainError):
        energy_functional(potential, 0.1, 0.4, np.array([0.6, 0.6, -0.2, 0.0]))


def test_project_simplex() -> None:
    """Projection onto the probability simplex."""
    assert np.allclose(project_simplex(np.array([0.5, 0.5, 0.5])), 1.0 / 3.0)
    assert np.allclose(project_simplex(np.array([2.0, 0.0])), [1.0, 0.0])


@pytest.mark.slow
def test_variational_oracle() -> None:
    """The discrete minimizer reproduces the energy of sigma_0."""
    sigma = sigma0_measure(0.1)
    potential = U0Potential(0.1)
    exact = measure_energy(sigma, potential)
    oracle = discrete_equilibrium(potential, sigma.a, sigma.b)
    assert oracle.energy == pytest.approx(exact, abs=defaults.VARIATIONAL_TOL)
    assert float(np.sum(oracle.masses)) == pytest.approx(1.0, abs=1e-12)


def test_minimality() -> None:
    """Normalized perturbations of sigma_0 have larger energy."""
    check = minimality_check(0.1, count=3, seed=7)
    assert check.perturbed_energies.shape == (3,)
    assert check.min_gap > 0
    with pytest.raises(DomainError):
        minimality_check(0.1, amplitude=1.5)


def test_perturbed_measure() -> None:
    """Perturbations are renormalized and must stay positive."""
    sigma = sigma0_measure(0.3)
    assert perturbed_measure(sigma, [0.2, -0.1]).mass == pytest.approx(1.0, rel=1e-10)
    with pytest.raises(DomainError):
        perturbed_measure(sigma, [1.5])


def test_free_lsi() -> None:
    """E(p) - E(sigma_0) is bounded by the Fisher-type term."""
    sigma = sigma0_measure(0.3)
    for p in (sigma, perturbed_measure(sigma, [0.1]), beta_bump_measure(sigma.a, sigma.b)):
        assert free_lsi_check(0.3, p).holds
    with pytest.raises(DomainError):
        free_lsi_check(0.1, sigma0_measure(0.1))
    with pytest.raises(DomainError):
        free_lsi_check(0.3, beta_bump_measure(sigma.a, 0.5 * (sigma.a + sigma.b)))


def test_linear_statistic_of_identity() -> None:
    """psi(x) = x on [a, b] has variance (b - a)^2 / 16 in both forms."""
    a, b = 0.2, 1.0
    stat = linear_statistic(lambda x: x, a, b, 8, measure=sigma0_measure(0.1), particles=5)
    assert stat.variance == pytest.approx((b - a) ** 2 / 16.0, rel=1e-10)
    assert stat.tail_bound == pytest.approx(0.0, abs=1e-20)
    assert stat.mean is not None
    double = variance_double_integral(lambda x: x, a, b, dpsi=np.ones_like)
    assert double == pytest.approx((b - a) ** 2 / 16.0, rel=1e-10)
    with pytest.raises(DomainError):
        linear_statistic(lambda x: x, a, b, 0)


def test_linear_statistic_of_square() -> None:
    """psi(x) = x^2: the Chebyshev sum and the double integral agree."""
    a, b = 0.2, 1.0
    center, radius = 0.5 * (a + b), 0.5 * (b - a)
    stat = linear_statistic(lambda x: x**2, a, b, 8)
    assert stat.variance == pytest.approx(center**2 * radius**2 + radius**4 / 8.0, rel=1e-10)
    double = variance_double_integral(lambda x: x**2, a, b, dpsi=lambda y: 2.0 * y)
    assert double == pytest.approx(stat.variance, abs=1e-6)


def test_linear_statistic_variance_ignores_xi() -> None:
    """On a fixed window only the mean sees the measure."""
    a, b = 0.2, 1.0
    small, large = (
        linear_statistic(lambda x: x**2, a, b, 8, measure=sigma0_measure(xi), particles=5)
        for xi in (0.1, 0.3)
    )
    assert small.variance == large.variance
    assert small.mean != large.mean
