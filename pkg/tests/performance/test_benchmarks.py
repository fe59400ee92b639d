"""Timing of the determinant and grid kernels."""

import numpy as np
import pytest
from pytest_benchmark.fixture import BenchmarkFixture

from taukernel.operators import RankOneExp, ScatteringSpec, build_hankel, envelope_by_name, fredholm_det
from taukernel.sinh_gordon import phase_grid
from taukernel.specfun import halfline_rule

pytestmark = [pytest.mark.performance, pytest.mark.benchmark]


@pytest.mark.determinant_bench
def test_fredholm_det_benchmark(benchmark: BenchmarkFixture) -> None:
    """det(I + Gamma) at the default resolution."""
    gamma = build_hankel(ScatteringSpec(RankOneExp(), 0.5), halfline_rule(240))
    result = benchmark(fredholm_det, gamma)
    assert result.real == pytest.approx(1.0 + np.exp(-1.0) / 2.0, rel=1e-9)


@pytest.mark.determinant_bench
def test_hankel_assembly_benchmark(benchmark: BenchmarkFixture) -> None:
    """Sampling phi(y + z + 2x) on the rule."""
    rule = halfline_rule(240)
    spec = ScatteringSpec(RankOneExp(), 0.5)
    op = benchmark(build_hankel, spec, rule)
    assert op.size == 240


@pytest.mark.grid_bench
@pytest.mark.slow
def test_phase_grid_benchmark(benchmark: BenchmarkFixture) -> None:
    """A 3×3 sinh-Gordon grid on 120 nodes."""
    rule = halfline_rule(120)
    grid = np.linspace(0.8, 1.6, 3)
    result = benchmark.pedantic(
        phase_grid, args=(envelope_by_name("exp"), grid, grid, rule), rounds=3, iterations=1
    )
    assert result.S.shape == (3, 3)
