"""Global pytest configuration and fixtures."""

import pytest

from taukernel.config import reset_settings
from taukernel.linsys import DiscreteLinearSystem
from taukernel.operators import envelope_by_name
from taukernel.specfun import QuadratureRule, halfline_rule


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch: pytest.MonkeyPatch):
    """Run every test against default settings."""
    for name in (
        "TAUKERNEL_QUADRATURE_NODES",
        "TAUKERNEL_OUTPUT_DIR",
        "TAUKERNEL_LOG_LEVEL",
        "TAUKERNEL_MAX_WORKERS",
        "TAUKERNEL_SEED",
    ):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture(scope="session")
def rule() -> QuadratureRule:
    """Half-line rule used by most operator tests."""
    return halfline_rule(120)


@pytest.fixture(scope="session")
def small_rule() -> QuadratureRule:
    """Coarse half-line rule for ring identities."""
    return halfline_rule(48)


@pytest.fixture(scope="session")
def exp_system(rule: QuadratureRule) -> DiscreteLinearSystem:
    """h(y) = exp(-y) at t = 1."""
    return DiscreteLinearSystem.from_envelope(envelope_by_name("exp"), 1.0, rule)


@pytest.fixture(scope="session")
def small_system(small_rule: QuadratureRule) -> DiscreteLinearSystem:
    """h(y) = exp(-y) at t = 1 on the coarse rule."""
    return DiscreteLinearSystem.from_envelope(envelope_by_name("exp"), 1.0, small_rule)
