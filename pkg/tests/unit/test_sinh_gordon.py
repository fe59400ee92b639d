"""Tests for the phase S(x;t), its diagonal kernels and the block system."""

import math

import numpy as np
import pytest

from taukernel.config import defaults
from taukernel.core.errors import DomainError, NormThresholdError
from taukernel.linsys import DiscreteLinearSystem, potential
from taukernel.operators import envelope_by_name
from taukernel.sinh_gordon import (
    airy_asymptotic_check,
    antisymmetry_check,
    det_one_minus_gamma_sq,
    diagonal_identities,
    diagonal_values,
    gelfand_levitan_check,
    linear_counterpart_residual,
    phase_grid,
    phase_S,
    phase_S_gamma,
    schrodinger_U_check,
    spectral_norm_estimate,
    tail_integral,
    trace_bound_check,
    u_function,
    v_diag,
    v_prime_identity,
    w_diag,
)
from taukernel.specfun import QuadratureRule, halfline_rule


def test_phase_derivative_is_twice_v(exp_system: DiscreteLinearSystem) -> None:
    """dS/dx = 2 V(x,x)."""
    for x in (0.8, 1.0, 1.4):
        two_v = 2.0 * diagonal_values(exp_system, x).v
        residual = diagonal_identities(exp_system, x).phase_derivative
        assert residual <= defaults.PHASE_TOL * abs(two_v)


def test_v_derivative_identity(exp_system: DiscreteLinearSystem) -> None:
    """dV/dx = 2 floor(A) + 2 V^2, with floor(A) = -u/4."""
    for x in (0.8, 1.2):
        v = diagonal_values(exp_system, x).v
        scale = abs(0.5 * potential(exp_system, x)) + 2.0 * v**2
        assert v_prime_identity(exp_system, x) <= defaults.PHASE_TOL * scale


def test_diagonal_values_share_phase(exp_system: DiscreteLinearSystem) -> None:
    """The S reported with V and W is the phase itself."""
    values = diagonal_values(exp_system, 1.0)
    assert values.s == pytest.approx(phase_S(exp_system, 1.0), rel=1e-14)
    assert v_diag(exp_system, 1.0) == values.v
    assert w_diag(exp_system, 1.0) == values.w
    assert values.s > 0
    assert values.v < 0


def test_det_one_minus_gamma_squared(exp_system: DiscreteLinearSystem) -> None:
    """det(I - R^2) = exp(-4 int (s - x) V^2 ds)."""
    lhs, rhs = det_one_minus_gamma_sq(exp_system, 1.0)
    assert rhs == pytest.approx(lhs, rel=defaults.PHASE_TOL)


def test_schrodinger_equation(exp_system: DiscreteLinearSystem) -> None:
    """U = exp(-S) solves U'' = qU with q = -4 floor(A)."""
    check = schrodinger_U_check(exp_system, np.linspace(0.8, 1.6, 81))
    assert check.residual <= defaults.SCHRODINGER_TOL
    assert check.u_values.shape == (81,)


def test_antisymmetry(exp_system: DiscreteLinearSystem) -> None:
    """Flipping the sign of C flips the sign of S."""
    assert antisymmetry_check(exp_system, 1.0) < 1e-12


def test_trace_bound(exp_system: DiscreteLinearSystem) -> None:
    """trace R stays below int h^2/(2y) dy."""
    trace, bound = trace_bound_check(exp_system, 0.5)
    assert 0 < trace <= bound


def test_u_function_without_scattering(rule: QuadratureRule) -> None:
    """h = 0 gives U = 1."""
    sys = DiscreteLinearSystem.from_envelope(envelope_by_name("zero"), 1.0, rule)
    assert u_function(sys, 1.0) == 1.0
    assert phase_S(sys, 1.0) == 0.0


def test_tail_integral() -> None:
    """int_0^inf exp(-s) ds = 1."""
    assert tail_integral(lambda s: math.exp(-s), 0.0) == pytest.approx(1.0, rel=1e-12)


def test_spectral_norm_estimate() -> None:
    """Power iteration with an eigensolve near the threshold."""
    assert spectral_norm_estimate(np.zeros((3, 3))) == 0.0
    assert spectral_norm_estimate(np.diag([0.3, -0.9])) == pytest.approx(0.9, rel=1e-12)


def test_phase_grid_zero_envelope(rule: QuadratureRule) -> None:
    """phi = 0 gives S = 0 and a zero residual everywhere."""
    grid = np.linspace(0.8, 1.2, 3)
    result = phase_grid(envelope_by_name("zero"), grid, grid, rule)
    assert result.S.shape == (3, 3)
    assert result.max_residual == 0.0
    assert result.mean_residual == 0.0
    assert result.max_discretization == 0.0


def test_phase_grid_guards(rule: QuadratureRule) -> None:
    """Coarse steps, non-uniform grids and t near zero are rejected."""
    h = envelope_by_name("exp")
    grid = np.linspace(0.8, 1.2, 3)
    with pytest.raises(DomainError):
        phase_grid(h, grid, grid, rule, step=0.02)
    with pytest.raises(DomainError):
        phase_grid(h, np.array([0.8, 0.9, 1.2]), grid, rule)
    with pytest.raises(DomainError):
        phase_grid(h, grid, np.array([0.004, 0.005]), rule)


def test_phase_grid_norm_threshold(rule: QuadratureRule) -> None:
    """h = 1 near the origin makes R non-contractive; the points are listed."""
    grid = np.array([0.02, 0.03, 0.04])
    with pytest.raises(NormThresholdError) as info:
        phase_grid(envelope_by_name("one"), grid, grid, rule)
    assert info.value.points


@pytest.mark.slow
def test_sinh_gordon_residual(rule: QuadratureRule) -> None:
    """S_xt = 2 sinh 2S on a small grid."""
    grid = np.linspace(0.8, 1.6, 3)
    result = phase_grid(envelope_by_name("exp"), grid, grid, rule, max_workers=2)
    assert result.max_residual <= defaults.SINH_GORDON_TOL
    assert result.max_discretization <= defaults.SINH_GORDON_TOL
    assert np.all(result.S > 0)


def test_phase_from_hankel_route(rule: QuadratureRule) -> None:
    """S built from Gamma on its own nodes matches the Howland S."""
    h = envelope_by_name("exp")
    spectral = halfline_rule(2 * rule.size)
    for x, t in ((0.8, 0.8), (1.2, 1.6)):
        sys = DiscreteLinearSystem(rule=rule, h_values=h(rule.nodes), t=t)
        expected = phase_S(sys, x)
        assert phase_S_gamma(h(spectral.nodes), x, t, rule, spectral) == pytest.approx(
            expected, abs=1e-9
        )
    zero = np.zeros(spectral.size)
    assert phase_S_gamma(zero, 1.0, 1.0, rule, spectral) == 0.0


def test_discretization_residual_falls_as_n_doubles() -> None:
    """Coarser quadrature shows up as a larger gap between the two routes to S."""
    h = envelope_by_name("exp")
    grid = np.array([0.8, 1.6])
    gaps = [
        phase_grid(h, grid, grid, halfline_rule(n)).max_discretization for n in (8, 16, 32)
    ]
    assert gaps[0] > gaps[1] > gaps[2]


def test_linear_counterpart(rule: QuadratureRule) -> None:
    """phi_xt = 2 phi."""
    h = envelope_by_name("exp")
    for x, t in ((0.8, 0.8), (1.2, 1.6)):
        assert linear_counterpart_residual(h, x, t, rule) <= defaults.LINEAR_COUNTERPART_TOL
    with pytest.raises(DomainError):
        linear_counterpart_residual(h, 1.0, 0.005, rule)


@pytest.mark.slow
def test_gelfand_levitan(small_system: DiscreteLinearSystem) -> None:
    """T_hat solves the Gelfand–Levitan equation and its consequences."""
    check = gelfand_levitan_check(small_system, 1.0, np.linspace(1.0, 2.0, 3))
    assert check.equation <= defaults.GELFAND_LEVITAN_TOL
    assert check.trace <= defaults.GELFAND_LEVITAN_TOL
    assert check.hyperbolic <= defaults.HYPERBOLIC_TOL
    assert check.block_determinant <= 1e-12


@pytest.mark.slow
def test_airy_ratio_tends_to_one() -> None:
    """2V / (-2 Ai(x)) approaches 1 as x grows."""
    ratios = airy_asymptotic_check((2.0, 3.0, 4.0))
    assert not any(r.skipped for r in ratios)
    gaps = [abs((r.ratio or 0.0) - 1.0) for r in ratios]
    assert gaps[0] >= gaps[1] >= gaps[2]
    assert gaps[2] <= defaults.AIRY_RATIO_TOL
