"""Linear systems (-A, B, C), the resolvent R_x and the bracket calculus."""

from taukernel.linsys.hierarchy import (
    HierarchyCheck,
    dressed_potential,
    kdv_hierarchy_check,
    mkdv_w_plus,
)
from taukernel.linsys.ring import (
    RingElement,
    RingState,
    a_power,
    bracket,
    f_derivative,
    log_det_resolvent,
    middle_derivative,
    potential,
    ring_derivation,
    ring_state,
    star_derivative,
    star_product,
)
from taukernel.linsys.system import (
    DiscreteLinearSystem,
    lyapunov_residual,
    lyapunov_t_residual,
    resolvent_R,
    scattering_derivative_check,
)
from taukernel.linsys.transforms import (
    GreenSeries,
    darboux_multiplier,
    darboux_transform,
    green_diagonal_series,
)

__all__ = [
    "DiscreteLinearSystem",
    "GreenSeries",
    "HierarchyCheck",
    "RingElement",
    "RingState",
    "a_power",
    "bracket",
    "darboux_multiplier",
    "darboux_transform",
    "dressed_potential",
    "f_derivative",
    "green_diagonal_series",
    "kdv_hierarchy_check",
    "log_det_resolvent",
    "lyapunov_residual",
    "lyapunov_t_residual",
    "middle_derivative",
    "mkdv_w_plus",
    "potential",
    "resolvent_R",
    "ring_derivation",
    "ring_state",
    "scattering_derivative_check",
    "star_derivative",
    "star_product",
]
