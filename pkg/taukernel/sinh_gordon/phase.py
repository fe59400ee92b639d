"""The phase S(x;t) and the diagonal kernels V, W, U of the block system.

For the Howland system with R = R_(x;t), E = exp(-xA) and K = (I - R^2)^-1:

    S = log det(I + R) - log det(I - R)
    V(x,x) = -C E K E B,    W(x,x) = C E K R E B,    U = exp(-S)
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray

from taukernel.config import defaults
from taukernel.core.differences import (
    STENCIL_MARGIN,
    first_derivative,
    grid_derivative,
    grid_step,
)
from taukernel.core.errors import AdmissibilityError, NormThresholdError, SingularOperatorError
from taukernel.linsys import DiscreteLinearSystem, potential, resolvent_R
from taukernel.operators import HowlandWeight, KernelOperator, fredholm_det
from taukernel.specfun import QuadratureRule, gauss_legendre

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

#: integrand size that ends a tail integral
TAIL_CUTOFF = 1e-16
TAIL_PANEL = 1.0
TAIL_PANEL_NODES = 16
TAIL_LIMIT = 400.0


def spectral_norm_estimate(matrix: FloatArray, iterations: int = 50) -> float:
    """Largest |eigenvalue| of a symmetric matrix by power iteration.

    Estimates above half the norm threshold are confirmed with a full
    symmetric eigensolve.
    """
    n = matrix.shape[0]
    if n == 0 or not np.any(matrix):
        return 0.0
    v = np.ones(n) / math.sqrt(n)
    estimate = 0.0
    for _ in range(iterations):
        w = matrix @ v
        norm = float(np.linalg.norm(w))
        if norm == 0:
            break
        estimate = norm
        v = w / norm
    if estimate > 0.5 * defaults.NORM_THRESHOLD:
        sym = 0.5 * (matrix + matrix.T)
        estimate = float(np.max(np.abs(np.linalg.eigvalsh(sym))))
    return estimate


def _checked_resolvent(sys: DiscreteLinearSystem, x: float) -> FloatArray:
    r = resolvent_R(sys, x)
    norm = spectral_norm_estimate(r)
    if norm >= defaults.NORM_THRESHOLD:
        raise NormThresholdError(
            f"||R|| = {norm:.6g} >= {defaults.NORM_THRESHOLD} at (x, t) = ({x}, {sys.t}); "
            "move x beyond the threshold where R becomes a contraction",
            points=[(x, sys.t)],
        )
    return r


def _logdet(matrix: FloatArray) -> float:
    sign, value = np.linalg.slogdet(matrix)
    if sign <= 0:
        raise SingularOperatorError("determinant is not positive")
    return float(value)


def phase_S(sys: DiscreteLinearSystem, x: float) -> float:
    """S(x;t) = log det(I + R) - log det(I - R).

    Raises
    ------
    NormThresholdError
        If ||R_(x;t)|| is not below the threshold.
    """
    r = _checked_resolvent(sys, x)
    eye = np.eye(sys.size)
    return _logdet(eye + r) - _logdet(eye - r)


def phase_S_gamma(
    h_values: FloatArray, x: float, t: float, rule: QuadratureRule, spectral: QuadratureRule
) -> float:
    """S from the Hankel operator of phi(.; t) instead of the Howland operator.

    Gamma is discretised on the nodes of ``rule``; phi is tabulated on
    ``spectral`` with ``h_values`` given at its nodes. Only the quadrature
    errors of the two rules separate the result from :func:`phase_S`.
    """
    weight = HowlandWeight(h_values=h_values, t=t, rule=spectral)
    factor = rule.sqrt_weights[:, None] * weight.hankel_factor(rule.nodes, x)
    gamma = KernelOperator(rule=rule, matrix=factor @ factor.T, symmetric=True)
    plus = fredholm_det(gamma, 1.0)
    minus = fredholm_det(gamma, -1.0)
    if plus.is_zero or minus.is_zero:
        raise SingularOperatorError(f"det(I ± Gamma) vanishes at x={x}")
    return plus.log_abs - minus.log_abs


@dataclass(frozen=True)
class DiagonalValues:
    """V(x,x), W(x,x) and S at one point."""

    v: float
    w: float
    s: float


def _guarded_inverse(matrix: FloatArray, what: str) -> FloatArray:
    cond = float(np.linalg.cond(matrix))
    if not np.isfinite(cond) or cond > defaults.CONDITION_LIMIT:
        raise SingularOperatorError(f"{what} is ill-conditioned (cond {cond:.3g})")
    return np.linalg.inv(matrix)


def diagonal_values(sys: DiscreteLinearSystem, x: float) -> DiagonalValues:
    """V, W and S sharing one resolvent."""
    r = _checked_resolvent(sys, x)
    eye = np.eye(sys.size)
    k = _guarded_inverse(eye - r @ r, "I - R^2")
    e = np.exp(-x * sys.a)
    ce = sys.c * e
    eb = e * sys.b
    v = -float(ce @ k @ eb)
    w = float(ce @ k @ r @ eb)
    s = _logdet(eye + r) - _logdet(eye - r)
    return DiagonalValues(v=v, w=w, s=s)


def v_diag(sys: DiscreteLinearSystem, x: float) -> float:
    """V(x,x) = -C E (I - R^2)^-1 E B."""
    return diagonal_values(sys, x).v


def w_diag(sys: DiscreteLinearSystem, x: float) -> float:
    """W(x,x) = C E (I - R^2)^-1 R E B."""
    return diagonal_values(sys, x).w


@dataclass(frozen=True)
class DiagonalIdentities:
    """Residuals of the first-order identities among S, V and W."""

    phase_derivative: float
    w_derivative: float
    v_derivative: float


def diagonal_identities(
    sys: DiscreteLinearSystem, x: float, step: float = defaults.FD_STEP
) -> DiagonalIdentities:
    """|S' - 2V|, |2W' + 4V^2| and |V' - 2 floor(A) - 2V^2| with five-point stencils."""
    here = diagonal_values(sys, x)
    ds = first_derivative(lambda xv: phase_S(sys, xv), x, step)
    dw = first_derivative(lambda xv: w_diag(sys, xv), x, step)
    dv = first_derivative(lambda xv: v_diag(sys, xv), x, step)
    floor_a = -0.25 * potential(sys, x)
    return DiagonalIdentities(
        phase_derivative=abs(ds - 2.0 * here.v),
        w_derivative=abs(2.0 * dw + 4.0 * here.v**2),
        v_derivative=abs(dv - 2.0 * floor_a - 2.0 * here.v**2),
    )


def v_prime_identity(sys: DiscreteLinearSystem, x: float) -> float:
    """|dV/dx - 2 floor(A) - 2 V^2|."""
    return diagonal_identities(sys, x).v_derivative


def antisymmetry_check(sys: DiscreteLinearSystem, x: float) -> float:
    """|S(C) + S(-C)|; flipping C negates R and swaps the two determinants."""
    flipped = replace(sys, c=-sys.c)
    return abs(phase_S(sys, x) + phase_S(flipped, x))


def trace_bound_check(sys: DiscreteLinearSystem, x: float) -> tuple[float, float]:
    """trace R_(x;t) against the bound int h^2 / (2y) dy."""
    trace = float(np.trace(resolvent_R(sys, x)))
    bound = 0.5 * float(np.sum(sys.rule.weights * sys.h_values**2 / sys.a))
    return trace, bound


def tail_integral(
    fn: Callable[[float], float], x: float, cutoff: float = TAIL_CUTOFF
) -> float:
    """int_x^inf fn(s) ds by Gauss–Legendre panels.

    Panels of unit length are added until |fn| at a panel end drops below
    ``cutoff``.

    Raises
    ------
    AdmissibilityError
        If the integrand has not decayed by ``x + TAIL_LIMIT``.
    """
    total = []
    lo = x
    while True:
        hi = lo + TAIL_PANEL
        rule = gauss_legendre(TAIL_PANEL_NODES, (lo, hi))
        total.append(float(np.dot(rule.weights, [fn(s) for s in rule.nodes])))
        if abs(fn(hi)) < cutoff:
            break
        if hi - x > TAIL_LIMIT:
            raise AdmissibilityError(f"V tail does not decay beyond x={hi}")
        lo = hi
    return math.fsum(total)


def _v_tail(sys: DiscreteLinearSystem, x: float) -> float:
    """V(x,x) by a linear solve, for tail points where R is small."""
    r = resolvent_R(sys, x)
    e = np.exp(-x * sys.a)
    return -float((sys.c * e) @ np.linalg.solve(np.eye(sys.size) - r @ r, e * sys.b))


def det_one_minus_gamma_sq(sys: DiscreteLinearSystem, x: float) -> tuple[float, float]:
    """det(I - R^2) directly and as exp(-4 int_x^inf (s - x) V(s,s)^2 ds)."""
    r = _checked_resolvent(sys, x)
    eye = np.eye(sys.size)
    lhs = math.exp(_logdet(eye - r) + _logdet(eye + r))

    def v_squared(s: float) -> float:
        return _v_tail(sys, s) ** 2

    moment = tail_integral(lambda s: (s - x) * v_squared(s), x) if np.any(sys.b) else 0.0
    return lhs, math.exp(-4.0 * moment)


def u_function(sys: DiscreteLinearSystem, x: float) -> float:
    """U(x) = exp(2 int_x^inf V(s,s) ds)."""
    if not np.any(sys.b):
        return 1.0
    return math.exp(2.0 * tail_integral(lambda s: _v_tail(sys, s), x, cutoff=1e-14))


@dataclass(frozen=True)
class SchrodingerCheck:
    """U'' = qU with q = -4 floor(A) on a grid."""

    x: FloatArray
    u_values: FloatArray
    q_values: FloatArray
    residual: float


def schrodinger_U_check(sys: DiscreteLinearSystem, x_grid: FloatArray) -> SchrodingerCheck:
    """max |U'' - qU| / |U| over the grid interior, with U = exp(-S)."""
    x = np.asarray(x_grid, dtype=float)
    h = grid_step(x, max_step=defaults.COARSE_GRID_STEP)
    u_values = np.exp(-np.array([phase_S(sys, xv) for xv in x]))
    q_values = np.array([potential(sys, xv) for xv in x])
    d2u = grid_derivative(u_values, h, 2)
    inner = slice(STENCIL_MARGIN, x.size - STENCIL_MARGIN)
    ratio = np.abs(d2u - q_values * u_values)[inner] / np.abs(u_values[inner])
    residual = float(np.max(ratio))
    logger.debug("Schrodinger residual %.3e on %d points", residual, x.size)
    return SchrodingerCheck(x=x, u_values=u_values, q_values=q_values, residual=residual)


__all__ = [
    "DiagonalIdentities",
    "DiagonalValues",
    "SchrodingerCheck",
    "antisymmetry_check",
    "det_one_minus_gamma_sq",
    "diagonal_identities",
    "diagonal_values",
    "phase_S",
    "phase_S_gamma",
    "schrodinger_U_check",
    "spectral_norm_estimate",
    "tail_integral",
    "trace_bound_check",
    "u_function",
    "v_diag",
    "v_prime_identity",
    "w_diag",
]
