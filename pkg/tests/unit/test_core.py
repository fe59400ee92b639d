"""Tests for errors, finite differences, sweeps and logging."""

import logging
import math

import numpy as np
import pytest
from rich.logging import RichHandler

from taukernel.core import (
    AdmissibilityError,
    ConvergenceError,
    DomainError,
    GridError,
    NormThresholdError,
    ResonanceError,
    SingularOperatorError,
    TaukernelError,
    UnsupportedError,
    configure_logging,
    sweep,
)
from taukernel.core.differences import (
    first_derivative,
    grid_derivative,
    grid_step,
    interior,
    mixed_partial,
    richardson_mixed_partial,
    second_derivative,
)


def test_error_hierarchy() -> None:
    """Domain errors are ValueErrors and numerical failures ArithmeticErrors."""
    assert issubclass(GridError, DomainError)
    assert issubclass(ResonanceError, ValueError)
    assert issubclass(AdmissibilityError, TaukernelError)
    assert issubclass(ConvergenceError, ArithmeticError)
    assert issubclass(NormThresholdError, SingularOperatorError)
    assert issubclass(UnsupportedError, NotImplementedError)


def test_errors_carry_diagnostics() -> None:
    """Convergence and norm errors keep their residuals and points."""
    err = ConvergenceError("no root", [1e-3, 2e-4])
    assert err.residuals == (1e-3, 2e-4)
    norm = NormThresholdError("too large", [(0.1, 0.2)])
    assert norm.points == ((0.1, 0.2),)


def test_grid_derivative_polynomials() -> None:
    """Five- and seven-point stencils are exact on low-degree polynomials."""
    x = np.linspace(0.0, 1.0, 41)
    h = grid_step(x)
    f = x**3 - 2 * x**2 + x
    d1 = interior(grid_derivative(f, h, 1))
    d2 = interior(grid_derivative(f, h, 2))
    d3 = interior(grid_derivative(f, h, 3))
    xi = interior(x)
    assert np.allclose(d1, 3 * xi**2 - 4 * xi + 1, atol=1e-10)
    assert np.allclose(d2, 6 * xi - 4, atol=1e-8)
    assert np.allclose(d3, 6.0, atol=1e-6)


def test_grid_derivative_marks_margin_nan() -> None:
    """Points where the stencil does not fit are nan."""
    x = np.linspace(0.0, 1.0, 11)
    out = grid_derivative(np.sin(x), grid_step(x), 1)
    assert np.all(np.isnan(out[:3]))
    assert np.all(np.isfinite(out[3:-3]))


def test_grid_step_rejects_bad_grids() -> None:
    """Non-uniform, short or coarse grids raise GridError."""
    with pytest.raises(GridError):
        grid_step(np.array([0.0, 0.1, 0.3, 0.4, 0.5, 0.6, 0.7]))
    with pytest.raises(GridError):
        grid_step(np.linspace(0.0, 1.0, 4))
    with pytest.raises(GridError):
        grid_step(np.linspace(0.0, 10.0, 11), max_step=0.5)


def test_scalar_stencils() -> None:
    """Scalar derivative helpers agree with analytic derivatives."""
    assert first_derivative(math.exp, 0.3) == pytest.approx(math.exp(0.3), rel=1e-10)
    assert second_derivative(math.sin, 0.7) == pytest.approx(-math.sin(0.7), rel=1e-7)


def test_mixed_partials() -> None:
    """The cross stencil and its extrapolation recover f_xt."""

    def f(x: float, t: float) -> float:
        return math.exp(-x * t)

    exact = (0.5 * 0.8 - 1.0) * math.exp(-0.4)
    assert mixed_partial(f, 0.5, 0.8, 1e-3) == pytest.approx(exact, rel=1e-5)
    assert richardson_mixed_partial(f, 0.5, 0.8, 1e-2) == pytest.approx(exact, rel=1e-7)


def test_sweep_preserves_order() -> None:
    """Threaded sweeps return results in input order."""
    items = list(range(50))
    assert sweep(lambda v: v * v, items, max_workers=4) == [v * v for v in items]
    assert sweep(lambda v: -v, items, max_workers=1) == [-v for v in items]


def test_configure_logging_is_idempotent() -> None:
    """Repeated configuration keeps a single rich handler."""
    logger = configure_logging("info")
    configure_logging("DEBUG")
    handlers = [h for h in logger.handlers if isinstance(h, RichHandler)]
    assert len(handlers) == 1
    assert logger.level == logging.DEBUG
    configure_logging("WARNING")
