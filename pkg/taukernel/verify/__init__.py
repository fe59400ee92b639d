"""Acceptance checks over every identity in the package."""

from taukernel.verify.report import CheckRecord, VerifyReport
from taukernel.verify.suite import (
    SUITE,
    Check,
    VerifyContext,
    check_names,
    run_check,
    run_verify,
)

__all__ = [
    "SUITE",
    "Check",
    "CheckRecord",
    "VerifyContext",
    "VerifyReport",
    "check_names",
    "run_check",
    "run_verify",
]
