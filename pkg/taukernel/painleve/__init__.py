"""Hankel determinants of the perturbed Laguerre weight and their Bessel structure."""

from taukernel.painleve.andreief import (
    AndreiefCheck,
    ChangeOfVariableCheck,
    andreief_check,
    andreief_integral,
    bessel_moment_determinant,
    change_of_variable_check,
    scattering_bessel_form,
)
from taukernel.painleve.determinants import (
    MAX_ORDER,
    HankelDetResult,
    SigmaFormData,
    barnes_formula_check,
    barnes_formula_log,
    hankel_det,
    hankel_det_from_table,
    is_decreasing_in_s,
    sigma_form_data,
)
from taukernel.painleve.moments import MomentTable, moment, moment_quadrature, moment_table

__all__ = [
    "MAX_ORDER",
    "AndreiefCheck",
    "ChangeOfVariableCheck",
    "HankelDetResult",
    "MomentTable",
    "SigmaFormData",
    "andreief_check",
    "andreief_integral",
    "barnes_formula_check",
    "barnes_formula_log",
    "bessel_moment_determinant",
    "change_of_variable_check",
    "hankel_det",
    "hankel_det_from_table",
    "is_decreasing_in_s",
    "moment",
    "moment_quadrature",
    "moment_table",
    "scattering_bessel_form",
    "sigma_form_data",
]
