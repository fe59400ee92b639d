"""Integrable kernels and their factorization into sums of Hankel products."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.core.errors import AdmissibilityError, DomainError
from taukernel.operators import KernelOperator
from taukernel.specfun import QuadratureRule

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
VectorFunction = Callable[[float], FloatArray]
ScalarFunction = Callable[[FloatArray], FloatArray]

#: |z - w| below this uses the diagonal limit
DIAGONAL_GAP = 1e-12
DIFFERENCE_STEP = 1e-6


def symplectic_j(k: int) -> FloatArray:
    """J = [[0, -I_k], [I_k, 0]]."""
    eye = np.eye(k)
    zero = np.zeros((k, k))
    return np.block([[zero, -eye], [eye, zero]])


@dataclass(frozen=True, eq=False)
class OmegaData:
    """Omega(s) = Omega_inf s + Omega_0 + sum_j Omega_j / (s - p_j)."""

    omega_inf: FloatArray
    poles: tuple[complex, ...] = ()
    residues: tuple[FloatArray, ...] = ()
    omega_0: FloatArray | None = None

    def __post_init__(self) -> None:
        if len(self.poles) != len(self.residues):
            raise DomainError("each pole needs one residue matrix")
        if any(complex(p).real <= 0 for p in self.poles):
            raise DomainError("poles must lie in the open right half-plane")

    def __call__(self, s: complex) -> NDArray[np.complex128]:
        value = np.asarray(self.omega_inf, dtype=complex) * s
        if self.omega_0 is not None:
            value = value + self.omega_0
        for p, res in zip(self.poles, self.residues, strict=True):
            value = value + np.asarray(res) / (s - p)
        return value

    def is_symmetric(self, samples: Sequence[complex] = (0.5, 1.0, 2.0, 3.5)) -> bool:
        return all(np.allclose(self(s), self(s).T, rtol=1e-12, atol=1e-14) for s in samples)


@dataclass(frozen=True, eq=False)
class IntegrableKernelSpec:
    """k(z, w) = <J Psi(z), Psi(w)> / (z - w).

    Attributes
    ----------
    psi : callable
        Psi(x), a vector of even length m.
    j_matrix : ndarray
        The m×m symplectic matrix.
    dpsi : callable, optional
        Psi'(x) for the diagonal limit.
    omega : OmegaData, optional
        Coefficient of the system J Psi' = Omega Psi, when known.
    """

    psi: VectorFunction
    j_matrix: FloatArray
    dpsi: VectorFunction | None = None
    omega: OmegaData | None = None

    def __post_init__(self) -> None:
        j = np.asarray(self.j_matrix, dtype=float)
        m = j.shape[0]
        if j.shape != (m, m) or m % 2:
            raise DomainError("J must be square of even size")
        if not np.array_equal(j.T, -j) or not np.array_equal(j @ j, -np.eye(m)):
            raise DomainError("J must satisfy J^T = -J and J^2 = -I")
        if self.omega is not None and not self.omega.is_symmetric():
            raise DomainError("Omega(s) must be symmetric")


def integrable_kernel(spec: IntegrableKernelSpec, z: float, w: float) -> float:
    """k(z, w), with the limit <J Psi'(z), Psi(z)> on the diagonal.

    Without ``dpsi`` the diagonal uses a symmetric difference and logs a warning.
    """
    j = spec.j_matrix
    if abs(z - w) >= DIAGONAL_GAP:
        return float(np.dot(j @ spec.psi(z), spec.psi(w)) / (z - w))
    if spec.dpsi is not None:
        derivative = spec.dpsi(z)
    else:
        logger.warning("No Psi' supplied; using a difference quotient on the diagonal at %g", z)
        h = DIFFERENCE_STEP
        derivative = (spec.psi(z + h) - spec.psi(z - h)) / (2 * h)
    return float(np.dot(j @ derivative, spec.psi(z)))


@dataclass(frozen=True)
class HankelFactorization:
    """Pairs (psi_j, phi_j) with K = sum_j Gamma_psi_j Gamma_phi_j."""

    pairs: tuple[tuple[ScalarFunction, ScalarFunction], ...] = field(default=())

    @property
    def count(self) -> int:
        return len(self.pairs)

    def check_admissible(self, rule: QuadratureRule) -> None:
        """Reject pairs whose estimate of int t f(t)^2 dt is not finite."""
        t = rule.nodes
        for k, (psi, phi) in enumerate(self.pairs):
            for name, f in (("psi", psi), ("phi", phi)):
                estimate = float(np.dot(rule.weights, t * f(t) ** 2))
                if not np.isfinite(estimate):
                    raise AdmissibilityError(
                        f"{name}_{k} is not Hilbert-Schmidt admissible (estimate {estimate})"
                    )


def _product_matrix(
    fact: HankelFactorization, z: FloatArray, w: FloatArray, rule: QuadratureRule
) -> FloatArray:
    u = rule.nodes
    out = np.zeros((z.size, w.size))
    for psi, phi in fact.pairs:
        left = psi(z[:, None] + u[None, :]) * rule.weights[None, :]
        right = phi(w[:, None] + u[None, :])
        if not (np.all(np.isfinite(left)) and np.all(np.isfinite(right))):
            raise AdmissibilityError("Hankel product integrand is not finite")
        out += left @ right.T
    return out


def hankel_product_kernel(
    fact: HankelFactorization, z: ArrayLike, w: ArrayLike, rule: QuadratureRule
) -> FloatArray | float:
    """sum_j int_0^inf psi_j(z + u) phi_j(w + u) du by quadrature in u.

    Scalars give a float; arrays give the matrix over all (z_i, w_k).
    """
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    ww = np.atleast_1d(np.asarray(w, dtype=float))
    if np.any(zz <= 0) or np.any(ww <= 0):
        raise DomainError("Hankel product kernel is defined for z, w > 0")
    values = _product_matrix(fact, zz, ww, rule)
    if np.ndim(z) == 0 and np.ndim(w) == 0:
        return float(values[0, 0])
    return values


@dataclass(frozen=True)
class HankelProductMatrix:
    """Discretized K with its trace and Hilbert–Schmidt norm."""

    operator: KernelOperator
    trace: float
    abs_trace: float
    hs_norm: float


def hankel_product_matrix(
    fact: HankelFactorization, rule: QuadratureRule, inner: QuadratureRule | None = None
) -> HankelProductMatrix:
    """Nyström matrix of K on ``rule`` with the u-integral on ``inner``."""
    inner = inner or rule
    fact.check_admissible(inner)
    y = rule.nodes
    sw = rule.sqrt_weights
    matrix = sw[:, None] * _product_matrix(fact, y, y, inner) * sw[None, :]
    op = KernelOperator(rule=rule, matrix=matrix, symmetric=False)
    diag = np.diag(op.matrix)
    return HankelProductMatrix(
        operator=op,
        trace=float(np.sum(diag)),
        abs_trace=float(np.sum(np.abs(diag))),
        hs_norm=op.hs_norm,
    )


@dataclass(frozen=True)
class AntidiagonalReport:
    """The j×j anti-identity matrix and its exact properties."""

    j: int
    matrix: NDArray[np.int64]
    trace: int
    involution: bool
    symmetric: bool


def antidiagonal_matrix_props(j: int) -> AntidiagonalReport:
    """Anti-identity R with R^2 = I, trace 0 for even j and 1 for odd j."""
    if j < 1:
        raise DomainError("size must be at least 1")
    r = np.fliplr(np.eye(j, dtype=np.int64))
    return AntidiagonalReport(
        j=j,
        matrix=r,
        trace=int(np.trace(r)),
        involution=bool(np.array_equal(r @ r, np.eye(j, dtype=np.int64))),
        symmetric=bool(np.array_equal(r, r.T)),
    )


def divided_difference_check(alpha: complex, j: int, z: float, w: float) -> float:
    """|((z-a)^-j - (w-a)^-j)/(z-w) + v(z)^T R v(w)| with v = (1/(s-a)^k)_{k<=j}."""
    report = antidiagonal_matrix_props(j)
    powers = np.arange(1, j + 1)
    vz = 1.0 / (z - alpha) ** powers
    vw = 1.0 / (w - alpha) ** powers
    lhs = ((z - alpha) ** (-j) - (w - alpha) ** (-j)) / (z - w)
    return float(abs(lhs + vz @ report.matrix @ vw))


__all__ = [
    "AntidiagonalReport",
    "HankelFactorization",
    "HankelProductMatrix",
    "IntegrableKernelSpec",
    "OmegaData",
    "antidiagonal_matrix_props",
    "divided_difference_check",
    "hankel_product_kernel",
    "hankel_product_matrix",
    "integrable_kernel",
    "symplectic_j",
]
