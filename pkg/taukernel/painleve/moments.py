"""Moments of the singularly perturbed Laguerre weight y^alpha exp(-y - s/y)."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from taukernel.core.errors import DomainError
from taukernel.specfun import QuadratureRule, bessel_k, halfline_rule

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
MomentMethod = Literal["gamma", "bessel"]

#: relative disagreement between the closed form and quadrature that is logged
CROSS_CHECK_TOLERANCE = 1e-8
CROSS_CHECK_NODES = 240


def _moment_integrand(alpha: float, s: float, k: int) -> Callable[[FloatArray], FloatArray]:
    power = alpha + k

    def integrand(y: FloatArray) -> FloatArray:
        return np.exp(power * np.log(y) - y - s / y)

    return integrand


def moment_quadrature(alpha: float, s: float, k: int, rule: QuadratureRule | None = None) -> float:
    """int_0^inf y^(alpha+k) exp(-y - s/y) dy on a half-line rule.

    The default rule puts half of its nodes below the mode of the integrand.
    """
    if rule is None:
        scale = max(1.0, alpha + k, math.sqrt(s))
        rule = halfline_rule(CROSS_CHECK_NODES, scale)
    return rule.integrate(_moment_integrand(alpha, s, k))


def _closed_form(alpha: float, s: float, k: int) -> tuple[float, MomentMethod]:
    nu = alpha + k + 1
    if s == 0:
        return math.gamma(nu), "gamma"
    root = math.sqrt(s)
    return 2.0 * s ** (0.5 * nu) * bessel_k(nu, 2.0 * root).value, "bessel"


def moment(alpha: float, s: float, k: int, rule: QuadratureRule | None = None) -> float:
    """mu_k = int_0^inf y^(alpha+k) exp(-y - s/y) dy.

    s = 0 uses Gamma(alpha + k + 1). For s > 0 the value is
    2 s^(nu/2) K_nu(2 sqrt(s)) with nu = alpha + k + 1; passing ``rule``
    also integrates numerically and logs a warning on disagreement.

    Raises
    ------
    DomainError
        If ``alpha + k < 0`` or ``s < 0``.
    """
    if alpha + k < 0 or not math.isfinite(alpha):
        raise DomainError(f"moment needs alpha + k >= 0, got alpha={alpha}, k={k}")
    if not s >= 0 or not math.isfinite(s):
        raise DomainError(f"moment needs s >= 0, got {s}")
    value, method = _closed_form(alpha, s, k)
    if rule is not None and s > 0:
        numeric = moment_quadrature(alpha, s, k, rule)
        relative = abs(numeric - value) / abs(value)
        if relative > CROSS_CHECK_TOLERANCE:
            logger.warning(
                "moment k=%d (alpha=%g, s=%g): %s form %.16g vs quadrature %.16g",
                k,
                alpha,
                s,
                method,
                value,
                numeric,
            )
    return value


@dataclass(frozen=True, eq=False)
class MomentTable:
    """mu_0 .. mu_{2n-2} for one (alpha, s) with the method behind each entry."""

    alpha: float
    s: float
    moments: FloatArray
    methods: tuple[MomentMethod, ...]

    def __post_init__(self) -> None:
        values = np.array(self.moments, dtype=float)
        if values.ndim != 1 or values.size != len(self.methods):
            raise DomainError("one method tag per moment")
        if np.any(~np.isfinite(values)) or np.any(values <= 0):
            raise DomainError("moments of a positive weight must be positive and finite")
        values.setflags(write=False)
        object.__setattr__(self, "moments", values)

    @property
    def order(self) -> int:
        """Largest n whose Hankel matrix the table fills."""
        return (self.moments.size + 1) // 2

    def log_convexity_gap(self) -> float:
        """min_k log mu_{k-1} + log mu_{k+1} - 2 log mu_k, never negative for a positive weight."""
        if self.moments.size < 3:
            return 0.0
        logs = np.log(self.moments)
        return float(np.min(logs[:-2] + logs[2:] - 2.0 * logs[1:-1]))

    def hankel_matrix(self, n: int | None = None) -> FloatArray:
        """[mu_{j+k}] for j, k < n."""
        n = self.order if n is None else n
        if not 1 <= n <= self.order:
            raise DomainError(f"table holds moments up to order {self.order}, got n={n}")
        idx = np.add.outer(np.arange(n), np.arange(n))
        return self.moments[idx]


def moment_table(
    alpha: float, s: float, n: int, *, cross_check: bool = False
) -> MomentTable:
    """Fill mu_0 .. mu_{2n-2}; ``cross_check`` adds the quadrature comparison."""
    if n < 1:
        raise DomainError("n must be at least 1")
    values: list[float] = []
    methods: list[MomentMethod] = []
    for k in range(2 * n - 1):
        rule = None
        if cross_check and s > 0:
            rule = halfline_rule(CROSS_CHECK_NODES, max(1.0, alpha + k, math.sqrt(s)))
        values.append(moment(alpha, s, k, rule))
        methods.append("gamma" if s == 0 else "bessel")
    return MomentTable(alpha=alpha, s=s, moments=np.array(values), methods=tuple(methods))


__all__ = [
    "CROSS_CHECK_TOLERANCE",
    "MomentTable",
    "moment",
    "moment_quadrature",
    "moment_table",
]
