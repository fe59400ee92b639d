"""Tests for the moments and Hankel determinants of the perturbed Laguerre weight."""

import math

import numpy as np
import pytest
from scipy import special

from taukernel.config import defaults
from taukernel.core.errors import DomainError, UnsupportedError
from taukernel.painleve import (
    andreief_check,
    barnes_formula_check,
    change_of_variable_check,
    hankel_det,
    is_decreasing_in_s,
    moment,
    moment_quadrature,
    moment_table,
    scattering_bessel_form,
    sigma_form_data,
)


def test_first_order_determinant() -> None:
    """D_1(0) = Gamma(1) = 1 for alpha = 0."""
    result = hankel_det(0.0, 0.0, 1)
    assert result.value == pytest.approx(1.0, abs=1e-12)
    assert result.sign == 1.0


def test_third_order_determinant() -> None:
    """D_3(0) = (1! 2!)^2 = 4 for alpha = 0."""
    result = hankel_det(0.0, 0.0, 3)
    assert result.log_abs == pytest.approx(math.log(4.0), rel=1e-10)
    assert result.min_eigenvalue > 0


@pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_barnes_formula(alpha: float, n: int) -> None:
    """D_n(0) = G(n+1) G(n+alpha+1) / G(alpha+1)."""
    assert barnes_formula_check(alpha, n) <= defaults.BARNES_TOL


def test_decreasing_in_s() -> None:
    """The perturbation lowers every determinant."""
    assert is_decreasing_in_s(0.0, 3, [0.0, 0.5, 1.0, 2.0])
    assert is_decreasing_in_s(1.5, 2, [2.0, 0.1, 1.0])


def test_hankel_det_guards() -> None:
    """Orders outside 1..8 and negative alpha are rejected."""
    for n in (0, 9):
        with pytest.raises(DomainError):
            hankel_det(0.0, 1.0, n)
    with pytest.raises(DomainError):
        hankel_det(-1.0, 1.0, 2)


def test_moment_closed_forms() -> None:
    """Gamma at s = 0 and the Bessel form for s > 0."""
    assert moment(0.0, 0.0, 3) == pytest.approx(6.0, rel=1e-14)
    assert moment(1.0, 1.0, 0) == pytest.approx(moment_quadrature(1.0, 1.0, 0), rel=1e-8)
    assert moment(1.0, 1.0, 0) == pytest.approx(2.0 * special.kv(2.0, 2.0), rel=1e-10)
    with pytest.raises(DomainError):
        moment(0.0, -1.0, 0)
    with pytest.raises(DomainError):
        moment(-2.0, 1.0, 1)


def test_moment_table() -> None:
    """Tables are log-convex and bounded by their order."""
    table = moment_table(0.5, 1.0, 4)
    assert table.order == 4
    assert table.methods == ("bessel",) * 7
    assert table.log_convexity_gap() >= 0
    assert table.hankel_matrix().shape == (4, 4)
    with pytest.raises(DomainError):
        table.hankel_matrix(5)
    checked = moment_table(0.5, 1.0, 4, cross_check=True)
    assert np.array_equal(checked.moments, table.moments)


def test_sigma_form_first_order() -> None:
    """d/ds log D_1 = -K_0(2 sqrt s) / (sqrt s K_1(2 sqrt s)) for alpha = 0."""
    data = sigma_form_data(0.0, 1, [1.0, 2.0])
    root = np.sqrt(data.s)
    expected = -special.kv(0.0, 2.0 * root) / (root * special.kv(1.0, 2.0 * root))
    assert np.allclose(data.d_log_det, expected, rtol=1e-7)
    assert np.allclose(data.sigma, data.s * expected, rtol=1e-7)
    with pytest.raises(DomainError):
        sigma_form_data(0.0, 1, [0.001])


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("t", [2.0, 5.0])
def test_andreief(n: int, t: float) -> None:
    """Bessel-derivative determinant = n-fold integral."""
    assert andreief_check(n, t).residual <= defaults.ANDREIEF_TOL


def test_andreief_guards() -> None:
    """Only n = 1, 2 and t > 0 are supported."""
    with pytest.raises(UnsupportedError):
        andreief_check(3, 2.0)
    with pytest.raises(DomainError):
        andreief_check(1, 0.0)


@pytest.mark.parametrize(("s", "x"), [(1.0, 2.0), (0.5, 0.5), (2.0, 4.0)])
def test_scattering_bessel_form(s: float, x: float) -> None:
    """int exp(-x y - s/y) dy = sqrt(4s/x) K_1(2 sqrt(sx))."""
    quadrature, closed = scattering_bessel_form(s, x)
    assert quadrature == pytest.approx(closed, rel=defaults.BESSEL_TOL)


@pytest.mark.parametrize("t", [1.0, 3.0])
def test_change_of_variable(t: float) -> None:
    """K_1(t) survives the substitution x = 2 / (1 + cosh u)."""
    assert change_of_variable_check(t).residual <= 1e-9
