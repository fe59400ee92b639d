"""Nyström operators, Fredholm determinants and Hankel scattering families."""

from taukernel.operators.kernel import (
    FredholmDeterminant,
    KernelOperator,
    build_hankel,
    build_howland,
    det_equivalence_check,
    eigen_det,
    fredholm_det,
    howland_factors,
    hs_norm,
    nystrom,
    trace,
)
from taukernel.operators.scattering import (
    ENVELOPES,
    AiryHalf,
    BesselK1,
    Envelope,
    HowlandWeight,
    RankOneExp,
    ScatteringFunction,
    ScatteringSpec,
    Tabulated,
    ZeroScattering,
    envelope_by_name,
)
from taukernel.operators.tau import TauProfile, default_rule, tau_function

__all__ = [
    "ENVELOPES",
    "AiryHalf",
    "BesselK1",
    "Envelope",
    "FredholmDeterminant",
    "HowlandWeight",
    "KernelOperator",
    "RankOneExp",
    "ScatteringFunction",
    "ScatteringSpec",
    "Tabulated",
    "TauProfile",
    "ZeroScattering",
    "build_hankel",
    "build_howland",
    "default_rule",
    "det_equivalence_check",
    "eigen_det",
    "envelope_by_name",
    "fredholm_det",
    "howland_factors",
    "hs_norm",
    "nystrom",
    "tau_function",
    "trace",
]
