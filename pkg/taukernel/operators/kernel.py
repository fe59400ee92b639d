"""Nyström discretization of integral operators on L²(0, inf)."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from taukernel.config import defaults
from taukernel.core.errors import AdmissibilityError, DomainError
from taukernel.operators.scattering import Envelope, HowlandWeight, ScatteringSpec
from taukernel.specfun import QuadratureRule, halfline_rule

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
Kernel = Callable[[FloatArray, FloatArray], FloatArray]


@dataclass(frozen=True, eq=False)
class KernelOperator:
    """Symmetrized Nyström matrix M_ij = sqrt(w_i) k(y_i, y_j) sqrt(w_j).

    Attributes
    ----------
    rule : QuadratureRule
        Nodes and weights the kernel was sampled on.
    matrix : ndarray
        Read-only N×N matrix.
    symmetric : bool
        Whether the kernel is symmetric; symmetric matrices are checked on entry.
    """

    rule: QuadratureRule
    matrix: FloatArray
    symmetric: bool = True

    def __post_init__(self) -> None:
        m = np.array(self.matrix)
        n = self.rule.size
        if m.shape != (n, n):
            raise DomainError(f"matrix shape {m.shape} does not match rule size {n}")
        if not np.all(np.isfinite(m)):
            raise AdmissibilityError("kernel matrix has non-finite entries")
        if self.symmetric:
            scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
            if m.size and float(np.max(np.abs(m - m.T))) > 1e-13 * scale:
                raise DomainError("kernel flagged symmetric but matrix is not")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def size(self) -> int:
        return self.rule.size

    @property
    def hs_norm(self) -> float:
        """Hilbert–Schmidt norm sqrt(sum M_ij^2)."""
        return float(np.sqrt(np.sum(np.abs(self.matrix) ** 2)))

    def trace(self) -> float:
        return trace(self)

    def determinant(self, lam: complex = 1.0) -> "FredholmDeterminant":
        return fredholm_det(self, lam)

    def eigenvalues(self) -> FloatArray:
        """Eigenvalues, ascending for symmetric operators."""
        if self.symmetric:
            return np.linalg.eigvalsh(self.matrix)
        return np.linalg.eigvals(self.matrix)


@dataclass(frozen=True)
class FredholmDeterminant:
    """det(I + lambda M) with its logarithm split into magnitude and phase."""

    value: complex
    log_abs: float
    phase: complex
    is_zero: bool

    @property
    def real(self) -> float:
        return float(np.real(self.value))


def nystrom(rule: QuadratureRule, kernel: Kernel, *, symmetric: bool = True) -> KernelOperator:
    """Sample ``kernel`` on the rule and apply square-root weights."""
    y = rule.nodes
    k = kernel(y[:, None], y[None, :])
    sw = rule.sqrt_weights
    return KernelOperator(rule=rule, matrix=sw[:, None] * k * sw[None, :], symmetric=symmetric)


def build_hankel(spec: ScatteringSpec, rule: QuadratureRule) -> KernelOperator:
    """Hankel operator with kernel phi(y + z + 2x).

    Raises
    ------
    AdmissibilityError
        If the Hilbert–Schmidt estimate of int t phi(t + 2x)^2 dt is not finite.
    """
    estimate = spec.hs_estimate(rule)
    if not math.isfinite(estimate):
        raise AdmissibilityError(
            f"Hilbert-Schmidt estimate diverges for {type(spec.function).__name__} "
            f"at shift {spec.shift}"
        )
    if estimate > defaults.HS_WARNING:
        logger.warning(
            "Borderline Hilbert-Schmidt estimate %.3g for %s at shift %g",
            estimate,
            type(spec.function).__name__,
            spec.shift,
        )
    y = rule.nodes
    sw = rule.sqrt_weights
    phi = spec.values(y[:, None] + y[None, :])
    return KernelOperator(rule=rule, matrix=sw[:, None] * phi * sw[None, :], symmetric=True)


def fredholm_det(op: KernelOperator, lam: complex = 1.0) -> FredholmDeterminant:
    """det(I + lambda M) from an LU factorization with partial pivoting.

    An exactly singular I + lambda M gives a result with ``is_zero`` set.
    """
    if lam == 0:
        return FredholmDeterminant(value=1.0, log_abs=0.0, phase=1.0, is_zero=False)
    lam_arr = np.asarray(lam)
    dtype = complex if np.iscomplexobj(lam_arr) or np.iscomplexobj(op.matrix) else float
    system = np.eye(op.size, dtype=dtype) + lam * op.matrix.astype(dtype)
    phase, log_abs = np.linalg.slogdet(system)
    if phase == 0 or not np.isfinite(log_abs):
        return FredholmDeterminant(value=0.0, log_abs=-math.inf, phase=0.0, is_zero=True)
    if dtype is complex and op.symmetric and np.isreal(lam_arr) and abs(np.imag(phase)) < 1e-12:
        phase = complex(np.real(phase))
    value = phase * math.exp(log_abs) if log_abs < 700 else phase * math.inf  # noqa: PLR2004
    return FredholmDeterminant(value=value, log_abs=float(log_abs), phase=phase, is_zero=False)


def eigen_det(op: KernelOperator, lam: float = 1.0) -> float:
    """prod(1 + lambda mu_i) over the symmetric eigenvalues."""
    if not op.symmetric:
        raise DomainError("eigenvalue product needs a symmetric operator")
    return float(np.prod(1.0 + lam * op.eigenvalues()))


def trace(op: KernelOperator) -> float:
    """Sum of the diagonal, approximating int k(y, y) dy."""
    return float(np.real(np.trace(op.matrix)))


def hs_norm(op: KernelOperator) -> float:
    return op.hs_norm


def howland_factors(
    h_values: FloatArray, x: float, t: float, rule: QuadratureRule
) -> FloatArray:
    """b_i = sqrt(w_i) h(y_i) exp(-x y_i - t / y_i)."""
    y = rule.nodes
    return rule.sqrt_weights * h_values * np.exp(-x * y - t / y)


def build_howland(
    h: Envelope | FloatArray, x: float, t: float, rule: QuadratureRule
) -> KernelOperator:
    """Howland operator with kernel h(y)h(z)exp(-x(y+z) - t(1/y + 1/z))/(y + z).

    Parameters
    ----------
    h : callable or ndarray
        Envelope, either a function or its values on the rule nodes.
    x : float
        Shift, ``x >= 0``.
    t : float
        Light-cone time. ``t = 0`` is accepted only when h vanishes near 0.
    rule : QuadratureRule
        Half-line rule.
    """
    if x < 0:
        raise DomainError("Howland shift must be nonnegative")
    h_values = h(rule.nodes) if callable(h) else np.asarray(h, dtype=float)
    if h_values.shape != rule.nodes.shape:
        raise DomainError("envelope must be tabulated on the rule nodes")
    if t < 0 or (t == 0 and abs(h_values[0]) > defaults.RESONANCE_GUARD):
        raise AdmissibilityError(
            "Howland operator needs t > 0 unless h vanishes at the origin"
        )
    b = howland_factors(h_values, x, t, rule)
    y = rule.nodes
    matrix = b[:, None] * b[None, :] / (y[:, None] + y[None, :])
    return KernelOperator(rule=rule, matrix=matrix, symmetric=True)


def det_equivalence_check(
    h: Envelope,
    x: float,
    t: float,
    rule: QuadratureRule,
    phi_rule: QuadratureRule | None = None,
) -> float:
    """Max over lambda = ±1 of |det(I + lambda Gamma) - det(I + lambda R)|.

    Gamma is the Hankel operator of the Howland weight phi(.; t) built on
    ``rule``; R is the Howland operator built on ``phi_rule``, a half-line rule
    of twice the size of ``rule`` if not given. The two sides share no nodes.
    """
    spectral = phi_rule or halfline_rule(2 * rule.size, rule.scale)
    h_values = h(spectral.nodes)
    if not np.any(h_values):
        return 0.0
    weight = HowlandWeight(h_values=h_values, t=t, rule=spectral)
    gamma = build_hankel(ScatteringSpec(weight, x), rule)
    howland = build_howland(h_values, x, t, spectral)
    residual = 0.0
    for lam in (1.0, -1.0):
        lhs = fredholm_det(gamma, lam).real
        rhs = fredholm_det(howland, lam).real
        residual = max(residual, abs(lhs - rhs))
    logger.debug("det equivalence at x=%g t=%g: %.3e", x, t, residual)
    return residual


__all__ = [
    "FredholmDeterminant",
    "KernelOperator",
    "build_hankel",
    "build_howland",
    "det_equivalence_check",
    "eigen_det",
    "fredholm_det",
    "howland_factors",
    "hs_norm",
    "nystrom",
    "trace",
]
