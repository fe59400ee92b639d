"""Hankel determinants D_n(s) = det[mu_{j+k}] of the perturbed Laguerre weight.

Moment matrices are equilibrated as S M S with S = diag(mu_{2j}^(-1/2)) before
the pivoted factorization, so log D_n = log det(S M S) + sum_j log mu_{2j}.
"""

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from taukernel.config import defaults
from taukernel.core.errors import DomainError, SingularOperatorError
from taukernel.core.parallel import sweep
from taukernel.painleve.moments import MomentTable, moment_table
from taukernel.specfun import barnes_g_log

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
MAX_ORDER = 8


@dataclass(frozen=True)
class HankelDetResult:
    """log |D_n| with its sign and the conditioning of the moment matrix.

    ``value`` is ``None`` when the equilibrated condition number exceeds the
    warning level; only the logarithm is reported then.
    """

    n: int
    alpha: float
    s: float
    log_abs: float
    sign: float
    condition_raw: float
    condition_equilibrated: float
    min_eigenvalue: float
    value: float | None


def _log_det_pivoted(matrix: FloatArray) -> tuple[float, float]:
    lu, piv = linalg.lu_factor(matrix, check_finite=True)
    diag = np.diag(lu)
    swaps = int(np.count_nonzero(piv != np.arange(piv.size)))
    sign = (-1.0) ** swaps * float(np.prod(np.sign(diag)))
    if np.any(diag == 0):
        return -math.inf, 0.0
    return float(np.sum(np.log(np.abs(diag)))), sign


def hankel_det_from_table(table: MomentTable, n: int) -> HankelDetResult:
    """D_n from an already filled moment table."""
    matrix = table.hankel_matrix(n)
    scale = 1.0 / np.sqrt(np.diag(matrix))
    equilibrated = scale[:, None] * matrix * scale[None, :]
    log_abs, sign = _log_det_pivoted(equilibrated)
    if sign <= 0:
        raise SingularOperatorError(
            f"moment matrix is not positive definite (n={n}, alpha={table.alpha}, s={table.s})"
        )
    log_abs -= 2.0 * float(np.sum(np.log(scale)))
    cond_eq = float(np.linalg.cond(equilibrated))
    cond_raw = float(np.linalg.cond(matrix))
    value: float | None = math.exp(log_abs) if log_abs < 700 else math.inf
    if cond_eq > defaults.HANKEL_CONDITION_WARNING:
        logger.warning(
            "Hankel moment matrix n=%d has condition %.3e; reporting log D_n only", n, cond_eq
        )
        value = None
    return HankelDetResult(
        n=n,
        alpha=table.alpha,
        s=table.s,
        log_abs=log_abs,
        sign=sign,
        condition_raw=cond_raw,
        condition_equilibrated=cond_eq,
        min_eigenvalue=float(np.min(np.linalg.eigvalsh(equilibrated))),
        value=value,
    )


def hankel_det(alpha: float, s: float, n: int) -> HankelDetResult:
    """D_n(s) for the weight y^alpha exp(-y - s/y) on (0, inf).

    Raises
    ------
    DomainError
        If ``n`` is outside 1..8 or the weight parameters are invalid.
    SingularOperatorError
        If the factorization does not confirm positive definiteness.
    """
    if not 1 <= n <= MAX_ORDER:
        raise DomainError(f"n must be in 1..{MAX_ORDER}, got {n}")
    if alpha < 0:
        raise DomainError("alpha must be >= 0")
    return hankel_det_from_table(moment_table(alpha, s, n), n)


def barnes_formula_log(alpha: float, n: int) -> float:
    """log of G(n + 1) G(n + alpha + 1) / G(alpha + 1)."""
    return barnes_g_log(n + 1) + barnes_g_log(n + alpha + 1) - barnes_g_log(alpha + 1)


def barnes_formula_check(alpha: float, n: int) -> float:
    """|D_n(0) / formula - 1| with both sides in log scale."""
    result = hankel_det(alpha, 0.0, n)
    return abs(math.expm1(result.log_abs - barnes_formula_log(alpha, n)))


@dataclass(frozen=True, eq=False)
class SigmaFormData:
    """log D_n(s) with its s-derivative on a grid."""

    alpha: float
    n: int
    s: FloatArray
    log_det: FloatArray
    d_log_det: FloatArray

    @property
    def sigma(self) -> FloatArray:
        """s d/ds log D_n(s)."""
        return self.s * self.d_log_det


def _log_det(alpha: float, n: int, s: float) -> float:
    return hankel_det(alpha, s, n).log_abs


def sigma_form_data(
    alpha: float,
    n: int,
    s_grid: ArrayLike,
    *,
    step: float = defaults.FD_STEP,
    max_workers: int = 1,
) -> SigmaFormData:
    """d/ds log D_n(s) by five-point central differences at each grid point.

    Raises
    ------
    DomainError
        If a stencil would reach s < 0.
    """
    s_values = np.asarray(s_grid, dtype=float)
    if s_values.ndim != 1 or s_values.size == 0:
        raise DomainError("s grid must be a nonempty 1-D array")
    if np.any(s_values - 2 * step < 0):
        raise DomainError(f"central differences need s >= {2 * step}")
    offsets = (-2, -1, 1, 2)

    def point(s: float) -> tuple[float, float]:
        logs = [_log_det(alpha, n, s + k * step) for k in offsets]
        derivative = (logs[0] - 8 * logs[1] + 8 * logs[2] - logs[3]) / (12 * step)
        return _log_det(alpha, n, s), derivative

    rows = sweep(point, [float(s) for s in s_values], max_workers)
    return SigmaFormData(
        alpha=alpha,
        n=n,
        s=s_values,
        log_det=np.array([r[0] for r in rows]),
        d_log_det=np.array([r[1] for r in rows]),
    )


def is_decreasing_in_s(alpha: float, n: int, s_values: Iterable[float]) -> bool:
    """True when log D_n strictly decreases along the sorted s values."""
    logs = [_log_det(alpha, n, s) for s in sorted(s_values)]
    return all(b < a for a, b in zip(logs, logs[1:]))


__all__ = [
    "MAX_ORDER",
    "HankelDetResult",
    "SigmaFormData",
    "barnes_formula_check",
    "barnes_formula_log",
    "hankel_det",
    "hankel_det_from_table",
    "is_decreasing_in_s",
    "sigma_form_data",
]
