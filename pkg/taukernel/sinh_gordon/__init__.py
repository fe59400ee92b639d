"""The sinh-Gordon phase S(x;t), the block system and the Gelfand–Levitan kernel."""

from taukernel.sinh_gordon.airy_check import AiryRatio, airy_asymptotic_check, airy_scattering
from taukernel.sinh_gordon.gelfand_levitan import (
    BlockState,
    GelfandLevitanCheck,
    block_state,
    gelfand_levitan_check,
    log_det_block,
    phi_hat,
)
from taukernel.sinh_gordon.grid import (
    PhaseGrid,
    linear_counterpart_residual,
    phase_grid,
    sinh_gordon_residual,
)
from taukernel.sinh_gordon.phase import (
    DiagonalIdentities,
    DiagonalValues,
    SchrodingerCheck,
    antisymmetry_check,
    det_one_minus_gamma_sq,
    diagonal_identities,
    diagonal_values,
    phase_S,
    phase_S_gamma,
    schrodinger_U_check,
    spectral_norm_estimate,
    tail_integral,
    trace_bound_check,
    u_function,
    v_diag,
    v_prime_identity,
    w_diag,
)

__all__ = [
    "AiryRatio",
    "BlockState",
    "DiagonalIdentities",
    "DiagonalValues",
    "GelfandLevitanCheck",
    "PhaseGrid",
    "SchrodingerCheck",
    "airy_asymptotic_check",
    "airy_scattering",
    "antisymmetry_check",
    "block_state",
    "det_one_minus_gamma_sq",
    "diagonal_identities",
    "diagonal_values",
    "gelfand_levitan_check",
    "linear_counterpart_residual",
    "log_det_block",
    "phase_S",
    "phase_S_gamma",
    "phase_grid",
    "phi_hat",
    "schrodinger_U_check",
    "sinh_gordon_residual",
    "spectral_norm_estimate",
    "tail_integral",
    "trace_bound_check",
    "u_function",
    "v_diag",
    "v_prime_identity",
    "w_diag",
]
