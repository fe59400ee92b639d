"""Equilibrium measures, logarithmic energy and linear statistics on an interval."""

from taukernel.coulomb.energy import (
    DiscreteEquilibrium,
    LSIResult,
    MinimalityCheck,
    beta_bump_measure,
    cell_log_kernel,
    cell_masses,
    discrete_equilibrium,
    energy_functional,
    fisher_term,
    free_lsi_check,
    measure_energy,
    minimality_check,
    perturbed_measure,
    project_simplex,
)
from taukernel.coulomb.hilbert import (
    ArcsineRule,
    arcsine_rule,
    edge_weight,
    hilbert_transform,
    principal_value,
)
from taukernel.coulomb.measures import (
    CorrectedMoments,
    Endpoints,
    EquilibriumMeasure,
    constraint_integrals,
    corrected_moments,
    correction_pv_residual,
    correction_rho_tilde,
    critical_xi,
    endpoints_u0,
    example_density_vsx,
    interior_points,
    log_potential_curve,
    normalization_error,
    rho_tilde_measure,
    sigma0_density,
    sigma0_measure,
    singular_integral_residual,
    solve_endpoints,
    vsx_quartic_endpoints,
)
from taukernel.coulomb.potentials import (
    ConvexityReport,
    Potential,
    U0Potential,
    UNPotential,
    VSXPotential,
    correction_derivative,
    un_potential,
)
from taukernel.coulomb.statistics import (
    ChebStatistic,
    chebyshev_coefficients,
    linear_statistic,
    variance_double_integral,
)

__all__ = [
    "ArcsineRule",
    "ChebStatistic",
    "ConvexityReport",
    "CorrectedMoments",
    "DiscreteEquilibrium",
    "Endpoints",
    "EquilibriumMeasure",
    "LSIResult",
    "MinimalityCheck",
    "Potential",
    "U0Potential",
    "UNPotential",
    "VSXPotential",
    "arcsine_rule",
    "beta_bump_measure",
    "cell_log_kernel",
    "cell_masses",
    "chebyshev_coefficients",
    "constraint_integrals",
    "corrected_moments",
    "correction_derivative",
    "correction_pv_residual",
    "correction_rho_tilde",
    "critical_xi",
    "discrete_equilibrium",
    "edge_weight",
    "endpoints_u0",
    "energy_functional",
    "example_density_vsx",
    "fisher_term",
    "free_lsi_check",
    "hilbert_transform",
    "interior_points",
    "linear_statistic",
    "log_potential_curve",
    "measure_energy",
    "minimality_check",
    "normalization_error",
    "perturbed_measure",
    "principal_value",
    "project_simplex",
    "rho_tilde_measure",
    "sigma0_density",
    "sigma0_measure",
    "singular_integral_residual",
    "solve_endpoints",
    "un_potential",
    "variance_double_integral",
]
