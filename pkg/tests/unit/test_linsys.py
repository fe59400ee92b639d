"""Tests for the discrete linear system, its ring calculus and addition rules."""

import numpy as np
import pytest

from taukernel.core.differences import second_derivative
from taukernel.core.errors import DomainError, ResonanceError
from taukernel.linsys import (
    DiscreteLinearSystem,
    a_power,
    bracket,
    darboux_multiplier,
    darboux_transform,
    dressed_potential,
    f_derivative,
    green_diagonal_series,
    kdv_hierarchy_check,
    log_det_resolvent,
    lyapunov_residual,
    lyapunov_t_residual,
    middle_derivative,
    mkdv_w_plus,
    potential,
    resolvent_R,
    ring_derivation,
    ring_state,
    scattering_derivative_check,
    star_derivative,
    star_product,
)
from taukernel.operators import envelope_by_name
from taukernel.specfun import QuadratureRule

STEP = 1e-4


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def test_system_guards(small_rule: QuadratureRule) -> None:
    """t must be positive and the envelope tabulated on the nodes."""
    with pytest.raises(DomainError):
        DiscreteLinearSystem.from_envelope(envelope_by_name("exp"), 0.0, small_rule)
    with pytest.raises(DomainError):
        DiscreteLinearSystem(rule=small_rule, h_values=np.ones(3), t=1.0)


def test_resolvent_is_symmetric(small_system: DiscreteLinearSystem) -> None:
    """B = C makes R_x symmetric; negative x is rejected."""
    r = resolvent_R(small_system, 0.5)
    assert np.allclose(r, r.T, rtol=0, atol=1e-15)
    with pytest.raises(DomainError):
        resolvent_R(small_system, -0.1)


def test_lyapunov_equations(exp_system: DiscreteLinearSystem) -> None:
    """dR/dx = -(AR + RA) and dR/dt = -(A^-1 R + R A^-1)."""
    assert lyapunov_residual(exp_system, 1.0) < 1e-6
    assert lyapunov_t_residual(exp_system, 1.0) < 1e-6


def test_scattering_derivative(exp_system: DiscreteLinearSystem) -> None:
    """phi'(x) = -C A exp(-xA) B."""
    assert scattering_derivative_check(exp_system, 1.0) < 1e-9


def test_scattering_matches_howland_trace(small_system: DiscreteLinearSystem) -> None:
    """phi(2x) is the sum of B_i C_i exp(-2x y_i), i.e. trace of (A + A) R_x."""
    x = 0.7
    y = small_system.a
    r = resolvent_R(small_system, x)
    assert small_system.scattering(2 * x) == pytest.approx(float(np.sum(2 * y * np.diag(r))))


def test_f_derivative(small_system: DiscreteLinearSystem) -> None:
    """dF/dx = AF + FA - 2FAF."""
    x = 1.0
    fd = (ring_state(small_system, x + STEP).f - ring_state(small_system, x - STEP).f) / (
        2 * STEP
    )
    assert _rel(fd, f_derivative(small_system, x)) < 1e-6


def test_middle_derivative(small_system: DiscreteLinearSystem) -> None:
    """The middle factor differentiates as (I - 2F)AM + MA(I - 2F)."""
    x = 1.0
    fd = (
        ring_state(small_system, x + STEP).middle - ring_state(small_system, x - STEP).middle
    ) / (2 * STEP)
    assert _rel(fd, middle_derivative(small_system, x)) < 1e-5


def test_bracket_homomorphism(small_system: DiscreteLinearSystem) -> None:
    """floor(P * Q) = floor(P) floor(Q)."""
    x = 1.0
    a = a_power(small_system, 1)
    a2 = a_power(small_system, 2)
    for p, q in ((a, a), (a, a2), (a2, a)):
        lhs = bracket(small_system, x, star_product(small_system, x, p, q))
        rhs = bracket(small_system, x, p) * bracket(small_system, x, q)
        assert lhs == pytest.approx(rhs, rel=1e-8)


def test_star_product_is_associative(small_system: DiscreteLinearSystem) -> None:
    """(P * Q) * S = P * (Q * S)."""
    x = 1.0
    a = a_power(small_system, 1)
    f = ring_state(small_system, x).f
    left = star_product(small_system, x, star_product(small_system, x, a, f), a)
    right = star_product(small_system, x, a, star_product(small_system, x, f, a))
    assert np.allclose(left.matrix, right.matrix, rtol=1e-10, atol=1e-12 * np.max(np.abs(left.matrix)))


def test_ring_element_is_tied_to_x(small_system: DiscreteLinearSystem) -> None:
    """An element formed at one x cannot be bracketed at another."""
    a = a_power(small_system, 1)
    element = star_product(small_system, 1.0, a, a)
    with pytest.raises(DomainError):
        bracket(small_system, 1.5, element)


def test_derivation_commutes_with_bracket(small_system: DiscreteLinearSystem) -> None:
    """d/dx floor(P) = floor(dP) for a constant P."""
    x = 1.0
    a = a_power(small_system, 1)
    zero = np.zeros_like(a)
    fd = (bracket(small_system, x + STEP, a) - bracket(small_system, x - STEP, a)) / (2 * STEP)
    derived = bracket(small_system, x, ring_derivation(small_system, x, a, zero))
    assert derived == pytest.approx(fd, rel=1e-6)


def test_star_derivative(small_system: DiscreteLinearSystem) -> None:
    """Leibniz rule for the star product of constant matrices."""
    x = 1.0
    a = a_power(small_system, 1)
    zero = np.zeros_like(a)
    fd = (
        star_product(small_system, x + STEP, a, a).matrix
        - star_product(small_system, x - STEP, a, a).matrix
    ) / (2 * STEP)
    analytic = star_derivative(small_system, x, a, zero, a, zero).matrix
    assert _rel(fd, analytic) < 1e-5


def test_potential_is_second_log_derivative(small_system: DiscreteLinearSystem) -> None:
    """-4 floor(A) = -2 (log det(I + R_x))''."""
    for x in (0.5, 1.0, 2.0):
        fd = -2.0 * second_derivative(lambda xv: log_det_resolvent(small_system, xv), x)
        assert potential(small_system, x) == pytest.approx(fd, rel=1e-5)


def test_dressed_potential(small_system: DiscreteLinearSystem) -> None:
    """The grid sweep agrees with the pointwise potential."""
    x = np.array([0.5, 1.0, 1.5])
    u = dressed_potential(small_system, x, max_workers=2)
    assert np.allclose(u, [potential(small_system, xv) for xv in x])


def test_green_series_converges(small_system: DiscreteLinearSystem) -> None:
    """Below the spectral margin the partial sum meets the closed form."""
    lam = -4.0 * float(np.max(small_system.a)) ** 2
    series = green_diagonal_series(small_system, 1.0, lam, 8)
    assert len(series.increments) == 9
    assert series.partial_sum == pytest.approx(series.closed_form, rel=1e-8)


def test_green_series_guards(small_system: DiscreteLinearSystem) -> None:
    """Spectral parameters near the spectrum and negative orders are rejected."""
    with pytest.raises(ResonanceError):
        green_diagonal_series(small_system, 1.0, -1.0, 4)
    with pytest.raises(DomainError):
        green_diagonal_series(small_system, 1.0, -1e12, -1)


def test_darboux_multiplier(small_system: DiscreteLinearSystem) -> None:
    """(zeta + sigma y)/(zeta - sigma y) with resonance and argument guards."""
    y = small_system.a
    assert np.allclose(darboux_multiplier(small_system, 2.0, -1), (2.0 - y) / (2.0 + y))
    with pytest.raises(DomainError):
        darboux_multiplier(small_system, 2.0, 2)
    with pytest.raises(DomainError):
        darboux_multiplier(small_system, 0.0, 1)
    with pytest.raises(ResonanceError):
        darboux_multiplier(small_system, float(y[5]), 1)


def test_darboux_transform_changes_input_only(small_system: DiscreteLinearSystem) -> None:
    """A and C are kept; B is multiplied."""
    dressed = darboux_transform(small_system, 2.0, -1)
    assert np.array_equal(dressed.c, small_system.c)
    assert np.array_equal(dressed.a, small_system.a)
    assert np.allclose(dressed.b, darboux_multiplier(small_system, 2.0, -1) * small_system.b)


def test_kdv_hierarchy(rule: QuadratureRule) -> None:
    """Stationary KdV recurrence for the first two levels."""
    sys = DiscreteLinearSystem.from_envelope(envelope_by_name("inv-exp"), 1.0, rule)
    check = kdv_hierarchy_check(sys, np.linspace(0.5, 2.0, 151), ell_max=2)
    assert set(check.levels) == {0, 1, 2}
    assert np.allclose(check.levels[1], check.u / 2)
    assert check.residuals[1] <= 1e-4
    assert check.residuals[2] <= 1e-3


def test_kdv_level_range(small_system: DiscreteLinearSystem) -> None:
    """Levels outside 1..3 are rejected."""
    with pytest.raises(DomainError):
        kdv_hierarchy_check(small_system, np.linspace(0.5, 1.0, 11), ell_max=4)


def test_mkdv_w_plus_on_quadratic() -> None:
    """u = x^2 gives w_+ = -x^2 - i in the interior."""
    x = np.linspace(0.0, 1.0, 21)
    w = mkdv_w_plus(x**2, x)
    assert np.all(np.isnan(w[:3]))
    assert np.allclose(w[3:-3], -(x[3:-3] ** 2) - 1j)
    with pytest.raises(DomainError):
        mkdv_w_plus(x[:-1], x)
