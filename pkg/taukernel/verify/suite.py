"""Acceptance suite: every identity as a residual against its tolerance.

Checks run on fixed resolutions. The caller only overrides tolerances and run
settings such as the seed.
"""

import itertools
import logging
import math
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from taukernel.config import defaults
from taukernel.core.differences import second_derivative
from taukernel.core.errors import TaukernelError
from taukernel.coulomb import (
    U0Potential,
    beta_bump_measure,
    correction_pv_residual,
    discrete_equilibrium,
    endpoints_u0,
    example_density_vsx,
    free_lsi_check,
    interior_points,
    measure_energy,
    minimality_check,
    normalization_error,
    perturbed_measure,
    rho_tilde_measure,
    sigma0_measure,
    singular_integral_residual,
)
from taukernel.hankel_products import laguerre_identity_check
from taukernel.linsys import (
    DiscreteLinearSystem,
    a_power,
    bracket,
    green_diagonal_series,
    kdv_hierarchy_check,
    log_det_resolvent,
    potential,
    ring_state,
    star_product,
)
from taukernel.operators import det_equivalence_check, envelope_by_name
from taukernel.painleve import (
    MAX_ORDER,
    andreief_check,
    barnes_formula_check,
    hankel_det,
    scattering_bessel_form,
)
from taukernel.sinh_gordon import (
    GelfandLevitanCheck,
    airy_asymptotic_check,
    det_one_minus_gamma_sq,
    diagonal_identities,
    diagonal_values,
    gelfand_levitan_check,
    linear_counterpart_residual,
    phase_grid,
    schrodinger_U_check,
)
from taukernel.specfun import QuadratureRule, bessel_k, halfline_rule
from taukernel.verify.report import CheckRecord, VerifyReport

logger = logging.getLogger(__name__)

ACCEPTANCE_NODES = 300
RING_NODES = 48
SG_GRID = np.linspace(0.8, 1.6, 9)
ACCEPTANCE_XI = 0.1
LSI_XI = 0.3

Outcome = tuple[float, dict[str, float]]


@dataclass
class VerifyContext:
    """Shared rules and systems; built lazily so a filtered run stays cheap."""

    max_workers: int = 1
    seed: int = 0
    _systems: dict[tuple[str, float, int], DiscreteLinearSystem] = field(
        default_factory=dict
    )

    @cached_property
    def rule(self) -> QuadratureRule:
        return halfline_rule(ACCEPTANCE_NODES)

    @cached_property
    def gelfand_levitan(self) -> GelfandLevitanCheck:
        sys = self.system("exp", 1.0)
        return gelfand_levitan_check(sys, 1.0, np.linspace(1.0, 3.0, 5))

    def system(
        self, envelope: str = "exp", t: float = 1.0, nodes: int = ACCEPTANCE_NODES
    ) -> DiscreteLinearSystem:
        key = (envelope, t, nodes)
        if key not in self._systems:
            rule = self.rule if nodes == ACCEPTANCE_NODES else halfline_rule(nodes)
            self._systems[key] = DiscreteLinearSystem.from_envelope(
                envelope_by_name(envelope), t, rule
            )
        return self._systems[key]


@dataclass(frozen=True)
class Check:
    name: str
    criterion: int
    description: str
    tolerance: float
    run: Callable[[VerifyContext], Outcome]


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)


# operators and sinh-Gordon ------------------------------------------------------


def _det_equivalence(ctx: VerifyContext) -> Outcome:
    spectral = halfline_rule(2 * ACCEPTANCE_NODES)
    residual = det_equivalence_check(envelope_by_name("exp"), 0.5, 0.5, ctx.rule, spectral)
    return residual, {"x": 0.5, "t": 0.5, "spectral_nodes": float(spectral.size)}


def _sinh_gordon(ctx: VerifyContext) -> Outcome:
    grid = phase_grid(
        envelope_by_name("exp"),
        SG_GRID,
        SG_GRID,
        ctx.rule,
        step=defaults.CROSS_STEP,
        max_workers=ctx.max_workers,
    )
    details = {"mean": grid.mean_residual, "discretization": grid.max_discretization}
    return max(grid.max_residual, grid.max_discretization), details


def _linear_counterpart(ctx: VerifyContext) -> Outcome:
    h = envelope_by_name("exp")
    points = list(itertools.product((0.8, 1.2, 1.6), repeat=2))
    residuals = [linear_counterpart_residual(h, x, t, ctx.rule) for x, t in points]
    return max(residuals), {"points": float(len(points))}


PHASE_POINTS = ((1.0, 1.0), (0.8, 1.2), (1.4, 0.9))


def _phase_identity(ctx: VerifyContext) -> Outcome:
    worst = 0.0
    for x, t in PHASE_POINTS:
        sys = ctx.system("exp", t)
        ident = diagonal_identities(sys, x)
        two_v = 2.0 * diagonal_values(sys, x).v
        worst = max(worst, ident.phase_derivative / max(abs(two_v), 1e-300))
    return worst, {}


def _det_identity(ctx: VerifyContext) -> Outcome:
    worst = 0.0
    for x, t in PHASE_POINTS:
        lhs, rhs = det_one_minus_gamma_sq(ctx.system("exp", t), x)
        worst = max(worst, _relative(rhs, lhs))
    return worst, {}


def _schrodinger(ctx: VerifyContext) -> Outcome:
    check = schrodinger_U_check(ctx.system("exp", 1.0), np.linspace(0.8, 1.6, 81))
    return check.residual, {}


def _gl_part(name: str) -> Callable[[VerifyContext], Outcome]:
    def run(ctx: VerifyContext) -> Outcome:
        result = ctx.gelfand_levitan
        details = {"block_determinant_residual": result.block_determinant}
        return float(getattr(result, name)), details

    return run


# ring and hierarchy ---------------------------------------------------------------


def _words(sys: DiscreteLinearSystem, x: float) -> list[np.ndarray]:
    a1 = a_power(sys, 1)
    return [a1, a_power(sys, 2), ring_state(sys, x).f @ a1]


def _homomorphism(ctx: VerifyContext) -> Outcome:
    x = 1.0
    sys = ctx.system("exp", 1.0, RING_NODES)
    words = _words(sys, x)
    worst = 0.0
    for p, q in itertools.product(words, repeat=2):
        product = bracket(sys, x, p) * bracket(sys, x, q)
        starred = bracket(sys, x, star_product(sys, x, p, q))
        worst = max(worst, _relative(starred, product))
    return worst, {"pairs": float(len(words) ** 2)}


def _potential(ctx: VerifyContext) -> Outcome:
    sys = ctx.system("exp", 1.0, RING_NODES)
    worst = 0.0
    for x in (0.5, 1.0, 2.0):
        u = potential(sys, x)
        fd = -2.0 * second_derivative(
            lambda xv: log_det_resolvent(sys, xv), x, defaults.FD_STEP
        )
        worst = max(worst, _relative(fd, u))
    return worst, {}


def _associativity(ctx: VerifyContext) -> Outcome:
    x = 1.0
    sys = ctx.system("exp", 1.0, RING_NODES)
    p, q, s = _words(sys, x)
    left = star_product(sys, x, star_product(sys, x, p, q), s).matrix
    right = star_product(sys, x, p, star_product(sys, x, q, s)).matrix
    scale = float(np.max(np.abs(left)))
    return float(np.max(np.abs(left - right))) / scale, {}


def _kdv(level: int) -> Callable[[VerifyContext], Outcome]:
    def run(ctx: VerifyContext) -> Outcome:
        sys = ctx.system("inv-exp", 1.0)
        x_grid = np.linspace(0.5, 2.0, 151)
        check = kdv_hierarchy_check(sys, x_grid, level, max_workers=ctx.max_workers)
        return check.residuals[level], {"level": float(level)}

    return run


def _green_series(ctx: VerifyContext) -> Outcome:
    sys = ctx.system("exp", 1.0, RING_NODES)
    lam = -4.0 * float(np.max(sys.a)) ** 2
    series = green_diagonal_series(sys, 1.0, lam, 8)
    return series.error, {"lambda": lam}


# Hankel products and Painleve determinants ----------------------------------------


LAGUERRE_POINTS = (0.5, 1.0, 2.0, 3.0, 4.0)


def _laguerre(ctx: VerifyContext) -> Outcome:
    worst = 0.0
    for n in (1, 2):
        for z, w in itertools.product(LAGUERRE_POINTS, repeat=2):
            worst = max(worst, laguerre_identity_check(n, z, w).relative)
    return worst, {"samples": float(2 * len(LAGUERRE_POINTS) ** 2)}


def _barnes(ctx: VerifyContext) -> Outcome:
    worst = max(
        barnes_formula_check(alpha, n)
        for alpha in (0.0, 1.0, 2.0)
        for n in range(1, MAX_ORDER + 1)
    )
    return worst, {}


def _first_order_det(ctx: VerifyContext) -> Outcome:
    result = hankel_det(0.0, 0.0, 1)
    value = math.exp(result.log_abs) * result.sign
    return abs(value - 1.0), {}


def _andreief(ctx: VerifyContext) -> Outcome:
    return max(andreief_check(2, t).residual for t in (2.0, 5.0)), {}


def _bessel_form(ctx: VerifyContext) -> Outcome:
    worst = 0.0
    for s, x in ((1.0, 1.0), (4.0, 1.0), (0.5, 2.0)):
        quadrature, closed = scattering_bessel_form(s, x)
        worst = max(worst, _relative(quadrature, closed))
    return worst, {}


def _k1_bounds(ctx: VerifyContext) -> Outcome:
    violation = 0.0
    for t in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
        k1 = bessel_k(1.0, t).value
        lower = math.exp(-t) / t
        upper = math.sqrt(math.pi / (2.0 * t)) * math.exp(-t) + lower
        violation = max(violation, lower - k1, k1 - upper)
    return max(violation, 0.0), {}


# Coulomb fluid -------------------------------------------------------------------


def _endpoint_closed_forms(ctx: VerifyContext) -> Outcome:
    worst = max(
        endpoints_u0(xi, cross_check=False).closed_form_agreement
        for xi in (0.05, 0.1, 0.2)
    )
    return worst, {}


def _endpoint_root_find(ctx: VerifyContext) -> Outcome:
    ends = endpoints_u0(ACCEPTANCE_XI)
    return ends.discrepancy, {"a": ends.a, "b": ends.b}


def _normalization(ctx: VerifyContext) -> Outcome:
    return normalization_error(sigma0_measure(ACCEPTANCE_XI)), {}


def _singular_integral(ctx: VerifyContext) -> Outcome:
    return singular_integral_residual(ACCEPTANCE_XI), {}


def _variational_oracle(ctx: VerifyContext) -> Outcome:
    sigma = sigma0_measure(ACCEPTANCE_XI)
    pot = U0Potential(ACCEPTANCE_XI)
    exact = measure_energy(sigma, pot)
    oracle = discrete_equilibrium(pot, sigma.a, sigma.b)
    return abs(oracle.energy - exact), {"energy": exact, "oracle": oracle.energy}


def _minimality(ctx: VerifyContext) -> Outcome:
    check = minimality_check(ACCEPTANCE_XI, seed=ctx.seed)
    return max(0.0, -check.min_gap), {"min_gap": check.min_gap}


def _vsx_normalization(ctx: VerifyContext) -> Outcome:
    measure, ends = example_density_vsx(1.0, 1.0, 1.0)
    return normalization_error(measure), {"a": ends.a, "b": ends.b}


def _correction_mass(ctx: VerifyContext) -> Outcome:
    return abs(rho_tilde_measure(ACCEPTANCE_XI).mass), {}


def _correction_pv(ctx: VerifyContext) -> Outcome:
    points = interior_points(sigma0_measure(ACCEPTANCE_XI))
    return float(np.max(correction_pv_residual(ACCEPTANCE_XI, points))), {}


def _free_lsi(ctx: VerifyContext) -> Outcome:
    sigma = sigma0_measure(LSI_XI)
    candidates = {
        "sigma0": sigma,
        "cos1": perturbed_measure(sigma, [0.1]),
        "mixed": perturbed_measure(sigma, [0.0, -0.2, 0.1]),
        "beta": beta_bump_measure(sigma.a, sigma.b),
    }
    slacks = {name: free_lsi_check(LSI_XI, p).slack for name, p in candidates.items()}
    return max(0.0, -min(slacks.values())), slacks


# Airy ------------------------------------------------------------------------------


def _airy(ctx: VerifyContext) -> Outcome:
    ratios = airy_asymptotic_check((2.0, 3.0, 4.0))
    if any(r.skipped or r.ratio is None for r in ratios):
        return math.inf, {}
    gaps = [abs((r.ratio or 0.0) - 1.0) for r in ratios]
    details = {f"ratio_{r.x:g}": float(r.ratio or 0.0) for r in ratios}
    if not gaps[0] >= gaps[1] >= gaps[2]:
        return math.inf, details
    return gaps[-1], details


SUITE: tuple[Check, ...] = (
    Check(
        "det_equivalence",
        1,
        "det(I + lambda Gamma) = det(I + lambda R)",
        defaults.DET_EQUIVALENCE_TOL,
        _det_equivalence,
    ),
    Check(
        "sinh_gordon",
        2,
        "phi_xt = 2 sinh 2 phi on a 9 x 9 grid",
        defaults.SINH_GORDON_TOL,
        _sinh_gordon,
    ),
    Check(
        "linear_counterpart",
        3,
        "phi_xt = 2 phi for the Howland weight",
        defaults.LINEAR_COUNTERPART_TOL,
        _linear_counterpart,
    ),
    Check(
        "phase_identity",
        4,
        "dS/dx = 2V(x, x)",
        defaults.PHASE_TOL,
        _phase_identity,
    ),
    Check(
        "det_identity",
        4,
        "det(I - R^2) = exp(-4 int (s - x) V^2 ds)",
        defaults.PHASE_TOL,
        _det_identity,
    ),
    Check(
        "schrodinger",
        5,
        "U'' = qU with U = exp(-S)",
        defaults.SCHRODINGER_TOL,
        _schrodinger,
    ),
    Check(
        "gelfand_levitan",
        6,
        "block integral equation",
        defaults.GELFAND_LEVITAN_TOL,
        _gl_part("equation"),
    ),
    Check(
        "gelfand_levitan_trace",
        6,
        "log-determinant derivative against the trace",
        defaults.GELFAND_LEVITAN_TOL,
        _gl_part("trace"),
    ),
    Check(
        "gelfand_levitan_hyperbolic",
        6,
        "hyperbolic equation for the block kernel",
        defaults.HYPERBOLIC_TOL,
        _gl_part("hyperbolic"),
    ),
    Check(
        "bracket_homomorphism",
        7,
        "floor(P * Q) = floor(P) floor(Q)",
        defaults.HOMOMORPHISM_TOL,
        _homomorphism,
    ),
    Check(
        "potential",
        7,
        "u = -2 (log det(I + R))''",
        defaults.POTENTIAL_TOL,
        _potential,
    ),
    Check(
        "star_associativity",
        7,
        "(P * Q) * S = P * (Q * S)",
        defaults.ASSOCIATIVITY_TOL,
        _associativity,
    ),
    Check(
        "kdv_level_1",
        8,
        "KdV hierarchy, first flow",
        defaults.KDV_TOL[0],
        _kdv(1),
    ),
    Check(
        "kdv_level_2",
        8,
        "KdV hierarchy, second flow",
        defaults.KDV_TOL[1],
        _kdv(2),
    ),
    Check(
        "green_series",
        9,
        "diagonal Green series against its closed form",
        defaults.GREEN_SERIES_TOL,
        _green_series,
    ),
    Check(
        "laguerre_identity",
        10,
        "Wronskian kernel = Hankel-product integral",
        defaults.LAGUERRE_TOL,
        _laguerre,
    ),
    Check(
        "barnes_formula",
        11,
        "D_n(0) against the Barnes G closed form",
        defaults.BARNES_TOL,
        _barnes,
    ),
    Check(
        "first_order_det",
        11,
        "D_1(0) = 1 for alpha = 0",
        1e-12,
        _first_order_det,
    ),
    Check(
        "andreief",
        12,
        "Andreief integral = moment determinant",
        defaults.ANDREIEF_TOL,
        _andreief,
    ),
    Check(
        "bessel_form",
        13,
        "scattering integral = Bessel K_1 form",
        defaults.BESSEL_TOL,
        _bessel_form,
    ),
    Check(
        "bessel_k1_bounds",
        13,
        "two-sided bound on K_1",
        1e-12,
        _k1_bounds,
    ),
    Check(
        "endpoint_closed_forms",
        14,
        "both closed forms of the support agree",
        defaults.ENDPOINT_TOL,
        _endpoint_closed_forms,
    ),
    Check(
        "endpoint_root_find",
        14,
        "root-find of the constraint integrals",
        1e-9,
        _endpoint_root_find,
    ),
    Check(
        "normalization",
        14,
        "sigma_0 has unit mass",
        defaults.NORMALIZATION_TOL,
        _normalization,
    ),
    Check(
        "singular_integral",
        14,
        "2 pi H sigma_0 = 2 pi u_0' on the support",
        defaults.SINGULAR_INTEGRAL_TOL,
        _singular_integral,
    ),
    Check(
        "variational_oracle",
        14,
        "discrete minimizer energy against E(sigma_0)",
        defaults.VARIATIONAL_TOL,
        _variational_oracle,
    ),
    Check(
        "energy_minimality",
        14,
        "perturbations of sigma_0 raise the energy",
        1e-9,
        _minimality,
    ),
    Check(
        "vsx_normalization",
        14,
        "the v(z) density has unit mass",
        defaults.NORMALIZATION_TOL,
        _vsx_normalization,
    ),
    Check(
        "correction_mass",
        15,
        "rho~ has zero mass",
        defaults.CORRECTION_TOL,
        _correction_mass,
    ),
    Check(
        "correction_pv",
        15,
        "H rho~ = f' on the support",
        defaults.PV_TOL,
        _correction_pv,
    ),
    Check(
        "free_lsi",
        16,
        "free log-Sobolev inequality",
        defaults.LSI_SLACK,
        _free_lsi,
    ),
    Check(
        "airy_asymptotics",
        17,
        "2V / (-2 Ai) tends to 1",
        defaults.AIRY_RATIO_TOL,
        _airy,
    ),
)


def check_names() -> list[str]:
    return [c.name for c in SUITE]


def run_check(
    check: Check, ctx: VerifyContext, tol: float | None = None
) -> CheckRecord:
    """Run one check; library errors become failed records, anything else propagates."""
    tolerance = tol if tol is not None else check.tolerance
    start = time.perf_counter()
    residual: float | None = None
    details: dict[str, float] = {}
    error: str | None = None
    try:
        residual, details = check.run(ctx)
    except TaukernelError as exc:
        logger.warning("check %s raised %s: %s", check.name, type(exc).__name__, exc)
        error = f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    passed = (
        error is None
        and residual is not None
        and math.isfinite(residual)
        and residual <= tolerance
    )
    logger.info(
        "%-28s residual %s tol %.1e %s",
        check.name,
        "n/a" if residual is None else f"{residual:.3e}",
        tolerance,
        "ok" if passed else "FAILED",
    )
    return CheckRecord(
        name=check.name,
        criterion=check.criterion,
        description=check.description,
        residual=residual,
        tolerance=tolerance,
        passed=passed,
        seconds=seconds,
        error=error,
        details=details,
    )


def run_verify(
    *,
    tol: float | None = None,
    max_workers: int = 1,
    seed: int = 0,
    only: list[str] | None = None,
) -> VerifyReport:
    """Run the suite, or the named subset of it, in suite order.

    ``tol`` replaces every check's tolerance.

    Raises
    ------
    KeyError
        If ``only`` names an unknown check.
    """
    selected = list(SUITE)
    if only:
        known = set(check_names())
        unknown = [name for name in only if name not in known]
        if unknown:
            raise KeyError(f"unknown checks: {', '.join(unknown)}")
        selected = [c for c in SUITE if c.name in only]
    ctx = VerifyContext(max_workers=max_workers, seed=seed)
    start = time.perf_counter()
    records = [run_check(check, ctx, tol) for check in selected]
    report = VerifyReport(checks=records, seconds=time.perf_counter() - start)
    logger.info("verify: %d/%d passed", report.total - report.failed, report.total)
    return report


__all__ = ["SUITE", "Check", "VerifyContext", "check_names", "run_check", "run_verify"]
