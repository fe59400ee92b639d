"""Large-x behavior of 2V(x,x) for the Airy scattering function phi(t) = Ai(t/2)."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from taukernel.config import defaults
from taukernel.core.differences import first_derivative
from taukernel.operators import (
    AiryHalf,
    ScatteringFunction,
    ScatteringSpec,
    Tabulated,
    build_hankel,
    fredholm_det,
)
from taukernel.sinh_gordon.phase import spectral_norm_estimate
from taukernel.specfun import QuadratureRule, airy, halfline_rule

logger = logging.getLogger(__name__)

TABLE_LENGTH = 80.0
TABLE_SAMPLES = 8001


@dataclass(frozen=True)
class AiryRatio:
    """2V(x,x) / (-2 Ai(x)) at one x, or a skipped point."""

    x: float
    two_v: float | None
    ratio: float | None
    skipped: bool = False


def airy_scattering(*, tabulated: bool = True) -> ScatteringFunction:
    """Ai(t/2), optionally as a cubic-spline table on [0, 80]."""
    exact = AiryHalf()
    if not tabulated:
        return exact
    return Tabulated.from_function(exact.evaluate, TABLE_LENGTH, TABLE_SAMPLES)


def _phase(function: ScatteringFunction, rule: QuadratureRule, x: float) -> float:
    gamma = build_hankel(ScatteringSpec(function, x), rule)
    return fredholm_det(gamma, 1.0).log_abs - fredholm_det(gamma, -1.0).log_abs


def airy_asymptotic_check(
    x_list: Iterable[float],
    rule: QuadratureRule | None = None,
    *,
    tabulated: bool = True,
) -> list[AiryRatio]:
    """Ratio of 2V = d/dx [log det(I + Gamma_x) - log det(I - Gamma_x)] to -2 Ai(x).

    Points where ||Gamma_x|| >= 1 are skipped with a warning.
    """
    rule = rule or halfline_rule(defaults.QUADRATURE_NODES)
    function = airy_scattering(tabulated=tabulated)
    out: list[AiryRatio] = []
    for x in x_list:
        gamma = build_hankel(ScatteringSpec(function, x), rule)
        if spectral_norm_estimate(gamma.matrix) >= 1.0:
            logger.warning("Skipping Airy check at x=%g: ||Gamma|| >= 1", x)
            out.append(AiryRatio(x=x, two_v=None, ratio=None, skipped=True))
            continue
        two_v = first_derivative(lambda xv: _phase(function, rule, xv), x, defaults.FD_STEP)
        ratio = two_v / (-2.0 * airy(x).value)
        logger.debug("Airy ratio at x=%g: %.6f", x, ratio)
        out.append(AiryRatio(x=x, two_v=two_v, ratio=ratio))
    return out


__all__ = ["AiryRatio", "airy_asymptotic_check", "airy_scattering"]
