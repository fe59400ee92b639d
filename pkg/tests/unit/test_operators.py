"""Tests for scattering functions, Nyström operators and tau functions."""

import math

import numpy as np
import pytest

from taukernel.core.errors import AdmissibilityError, DomainError
from taukernel.operators import (
    BesselK1,
    HowlandWeight,
    KernelOperator,
    RankOneExp,
    ScatteringSpec,
    Tabulated,
    ZeroScattering,
    build_hankel,
    build_howland,
    det_equivalence_check,
    eigen_det,
    envelope_by_name,
    fredholm_det,
    hs_norm,
    nystrom,
    tau_function,
    trace,
)
from taukernel.specfun import QuadratureRule, halfline_rule


def _rank_one_det(x: float, lam: float = 1.0) -> float:
    return 1.0 + lam * math.exp(-2.0 * x) / 2.0


def test_rank_one_determinant(rule: QuadratureRule) -> None:
    """det(I + lambda Gamma) = 1 + lambda exp(-2x)/2 for phi = exp(-t)."""
    gamma = build_hankel(ScatteringSpec(RankOneExp(), 0.5), rule)
    assert fredholm_det(gamma).real == pytest.approx(_rank_one_det(0.5), rel=1e-10)
    assert fredholm_det(gamma, -1.0).real == pytest.approx(_rank_one_det(0.5, -1.0), rel=1e-10)
    assert eigen_det(gamma) == pytest.approx(_rank_one_det(0.5), rel=1e-10)


def test_trace_and_hs_norm(rule: QuadratureRule) -> None:
    """A rank-one kernel has trace = HS norm = int exp(-2y) dy."""
    op = nystrom(rule, lambda y, z: np.exp(-(y + z)))
    assert trace(op) == pytest.approx(0.5, rel=1e-10)
    assert hs_norm(op) == pytest.approx(0.5, rel=1e-10)


def test_zero_scattering_has_unit_determinant(rule: QuadratureRule) -> None:
    """phi = 0 gives det = 1 with no singularity flag."""
    det = fredholm_det(build_hankel(ScatteringSpec(ZeroScattering(), 0.0), rule))
    assert det.value == 1.0
    assert not det.is_zero


def test_fredholm_det_flags_singular() -> None:
    """An exactly singular I + lambda M is reported, not raised."""
    rule = halfline_rule(2)
    op = KernelOperator(rule=rule, matrix=np.array([[-1.0, 0.0], [0.0, 0.5]]))
    det = fredholm_det(op)
    assert det.is_zero
    assert det.log_abs == -math.inf


def test_kernel_operator_validation(rule: QuadratureRule) -> None:
    """Shape mismatches and fake symmetry are domain errors."""
    with pytest.raises(DomainError):
        KernelOperator(rule=rule, matrix=np.eye(3))
    small = halfline_rule(2)
    with pytest.raises(DomainError):
        KernelOperator(rule=small, matrix=np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_bessel_scattering_needs_shift(rule: QuadratureRule) -> None:
    """The Bessel kernel is not Hilbert–Schmidt without a shift."""
    with pytest.raises(AdmissibilityError):
        ScatteringSpec(BesselK1(s=1.0), 0.0)
    with pytest.raises(DomainError):
        BesselK1(s=0.0)


def test_bessel_scattering_integral(rule: QuadratureRule) -> None:
    """sqrt(4s/u) K_1(2 sqrt(su)) = int exp(-u y - s/y) dy."""
    s, u = 1.0, 2.0
    quadrature = rule.integrate(lambda y: np.exp(-u * y - s / y))
    assert BesselK1(s=s)(np.array([u]))[0] == pytest.approx(quadrature, rel=1e-8)


def test_howland_weight_two_variables(rule: QuadratureRule) -> None:
    """phi(x; t) evaluated through ``at`` agrees with the fixed-t weight."""
    weight = HowlandWeight.from_envelope(envelope_by_name("exp"), 0.7, rule)
    assert weight.at(1.2, 0.7) == pytest.approx(float(weight(np.array([1.2]))[0]), rel=1e-12)


def test_howland_weight_hankel_factor(rule: QuadratureRule) -> None:
    """F F^T samples phi(y + z + 2x) on any node set."""
    weight = HowlandWeight.from_envelope(envelope_by_name("exp"), 0.7, rule)
    y = halfline_rule(12).nodes
    factor = weight.hankel_factor(y, 0.4)
    assert factor.shape == (12, rule.size)
    expected = weight(y[:, None] + y[None, :] + 0.8)
    assert np.allclose(factor @ factor.T, expected, rtol=1e-12, atol=1e-300)


def test_howland_guards(rule: QuadratureRule) -> None:
    """Negative shifts and t = 0 with h(0) != 0 are rejected."""
    h = envelope_by_name("exp")
    with pytest.raises(DomainError):
        build_howland(h, -0.1, 1.0, rule)
    with pytest.raises(AdmissibilityError):
        build_howland(h, 0.5, 0.0, rule)


def test_howland_is_symmetric_and_contractive(rule: QuadratureRule) -> None:
    """R is symmetric with spectral norm below one for h = exp(-y)."""
    op = build_howland(envelope_by_name("exp"), 0.5, 0.5, rule)
    assert op.symmetric
    assert float(np.max(np.abs(op.eigenvalues()))) < 1.0


def test_det_equivalence() -> None:
    """Hankel and Howland representations give the same determinants."""
    rule = halfline_rule(300)
    spectral = halfline_rule(400)
    assert det_equivalence_check(envelope_by_name("exp"), 0.5, 0.5, rule, spectral) <= 1e-7


@pytest.mark.slow
def test_det_equivalence_default_spectral_rule() -> None:
    """Without an explicit phi rule the Howland side gets its own, finer nodes."""
    rule = halfline_rule(300)
    assert det_equivalence_check(envelope_by_name("exp"), 0.5, 0.5, rule) <= 1e-7


def test_bessel_hs_norm_decreases_with_shift(rule: QuadratureRule) -> None:
    """||Gamma_x||_HS falls strictly as the shift x grows."""
    phi = BesselK1(s=1.0)
    norms = [hs_norm(build_hankel(ScatteringSpec(phi, x), rule)) for x in (1, 2, 4, 8)]
    assert norms[-1] > 0
    assert all(a > b for a, b in zip(norms, norms[1:]))


def test_det_equivalence_zero_envelope(rule: QuadratureRule) -> None:
    """h = 0 is trivially equivalent."""
    assert det_equivalence_check(envelope_by_name("zero"), 0.5, 0.5, rule) == 0.0


def test_envelope_lookup() -> None:
    """Unknown envelope names are domain errors."""
    y = np.array([1.0, 2.0])
    assert np.allclose(envelope_by_name("exp")(y), np.exp(-y))
    with pytest.raises(DomainError):
        envelope_by_name("gauss")


def test_tabulated_matches_function(rule: QuadratureRule) -> None:
    """A spline of exp(-t) reproduces the rank-one determinant."""
    table = Tabulated.from_function(lambda t: np.exp(-t), 60.0)
    det = fredholm_det(build_hankel(ScatteringSpec(table, 0.5), rule)).real
    assert det == pytest.approx(_rank_one_det(0.5), rel=1e-6)


def test_tabulated_validation() -> None:
    """Too few or unsorted samples are rejected."""
    with pytest.raises(DomainError):
        Tabulated(t_samples=np.array([0.0, 1.0]), values=np.array([1.0, 0.5]))
    with pytest.raises(DomainError):
        Tabulated(t_samples=np.array([0.0, 2.0, 1.0, 3.0]), values=np.ones(4))


def test_tau_function_rank_one(rule: QuadratureRule) -> None:
    """log tau and u = -2 (log tau)'' for the rank-one family."""
    x = np.linspace(0.5, 1.5, 101)
    profile = tau_function(RankOneExp(), rule, x)
    tau = 1.0 + 0.5 * np.exp(-2.0 * x)
    assert np.allclose(profile.log_tau, np.log(tau), atol=1e-10)
    assert np.all(profile.sign == 1.0)
    second = 2.0 * np.exp(-2.0 * x) / tau - np.exp(-4.0 * x) / tau**2
    inner = slice(3, -3)
    assert np.allclose(profile.u[inner], -2.0 * second[inner], atol=1e-5)
    assert np.allclose(profile.tau, tau, rtol=1e-10)
