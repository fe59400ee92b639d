"""End-to-end runs of the command-line interface."""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from taukernel.cli import app

runner = CliRunner()

pytestmark = pytest.mark.integration


def _invoke(*args: str) -> tuple[int, str]:
    result = runner.invoke(app, list(args))
    return result.exit_code, result.output


def test_out_of_range_xi_is_usage_error(tmp_path: Path) -> None:
    """xi outside (0, 1/2) exits with code 2."""
    code, output = _invoke("equilibrium", "--xi", "0.6", "--out", str(tmp_path))
    assert code == 2
    assert "usage error" in output


def test_unknown_config_key_is_usage_error(tmp_path: Path) -> None:
    """Config files reject keys that are not run parameters."""
    config = tmp_path / "run.conf"
    config.write_text("# comment\nbogus = 1\n", encoding="utf-8")
    code, _ = _invoke("tau", "--config", str(config), "--out", str(tmp_path))
    assert code == 2


def test_config_file_values_are_used(tmp_path: Path) -> None:
    """Keys in the file configure the run; flags still override them."""
    config = tmp_path / "run.conf"
    config.write_text("family = rank-one\nsamples = 21\nn = 64\n", encoding="utf-8")
    code, output = _invoke("tau", "--config", str(config), "--out", str(tmp_path), "--n", "48")
    assert code == 0, output
    lines = (tmp_path / "tau.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x[1],log_tau[1],sign[1],u[1]"
    assert len(lines) == 22


def test_sinh_gordon_zero_envelope(tmp_path: Path) -> None:
    """phi = 0 passes with every artifact written."""
    code, output = _invoke(
        "sinh-gordon",
        "--envelope",
        "zero",
        "--n",
        "32",
        "--format",
        "csv,json",
        "--out",
        str(tmp_path),
    )
    assert code == 0, output
    for name in (
        "sinh_gordon_phase.csv",
        "sinh_gordon_phase.json",
        "sinh_gordon_residual.csv",
        "sinh_gordon_residual.json",
        "sinh_gordon_residual.svg",
    ):
        assert (tmp_path / name).exists()
    header = (tmp_path / "sinh_gordon_phase.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "x[1],t[1],S[1],V[1],W[1]"
    residual = (tmp_path / "sinh_gordon_residual.csv").read_text(encoding="utf-8")
    assert residual.splitlines()[0] == "x[1],t[1],residual[1],discretization[1]"
    document = json.loads((tmp_path / "sinh_gordon_residual.json").read_text(encoding="utf-8"))
    assert len(document["rows"]) == 81
    assert "<rect" in (tmp_path / "sinh_gordon_residual.svg").read_text(encoding="utf-8")


@pytest.mark.slow
def test_sinh_gordon_default_config(tmp_path: Path) -> None:
    """The default 9 x 9 window at N = 240 is within tolerance."""
    code, output = _invoke("sinh-gordon", "--out", str(tmp_path))
    assert code == 0, output
    assert "max discretization" in output


def test_sinh_gordon_csv_is_reproducible(tmp_path: Path) -> None:
    """Two runs of one config write byte-identical tables."""
    config = tmp_path / "run.conf"
    config.write_text("n = 32\ngrid_points = 3\nseed = 11\n", encoding="utf-8")
    first, second = tmp_path / "first", tmp_path / "second"
    for out in (first, second):
        code, output = _invoke("sinh-gordon", "--config", str(config), "--out", str(out))
        assert code == 0, output
    for name in ("sinh_gordon_phase.csv", "sinh_gordon_residual.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_hankel_det(tmp_path: Path) -> None:
    """Barnes check and monotonicity in s for small orders."""
    code, output = _invoke(
        "hankel-det",
        "--n-max",
        "3",
        "--s",
        "0,1",
        "--format",
        "csv,json",
        "--out",
        str(tmp_path),
    )
    assert code == 0, output
    report = json.loads((tmp_path / "hankel_det.json").read_text(encoding="utf-8"))
    assert [row["n"] for row in report["barnes"]] == [1, 2, 3]
    assert all(report["decreasing_in_s"].values())
    assert len(report["rows"]) == 6
    assert (tmp_path / "hankel_det.csv").exists()


def test_hankel_product(tmp_path: Path) -> None:
    """The Laguerre identity holds on the 5×5 (z, w) sample grid."""
    code, output = _invoke("hankel-product", "--order", "1", "--n", "32", "--out", str(tmp_path))
    assert code == 0, output
    lines = (tmp_path / "hankel_product.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "z[1],w[1],wronskian[1],hankel_product[1],relative[1]"
    assert len(lines) == 26


def test_equilibrium_with_correction(tmp_path: Path) -> None:
    """Below the critical xi the density table carries rho~."""
    code, output = _invoke("equilibrium", "--xi", "0.1", "--samples", "21", "--out", str(tmp_path))
    assert code == 0, output
    report = json.loads((tmp_path / "equilibrium_endpoints.json").read_text(encoding="utf-8"))
    assert report["correction_available"] is True
    assert report["a"] == pytest.approx(0.129766, abs=1e-4)
    header = (tmp_path / "equilibrium_density.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "x[1],sigma0[1],rho_tilde[1]"
    assert (tmp_path / "equilibrium_density.svg").exists()


def test_equilibrium_above_critical_xi(tmp_path: Path) -> None:
    """Above the critical xi only sigma_0 is tabulated."""
    code, output = _invoke("equilibrium", "--xi", "0.3", "--samples", "11", "--out", str(tmp_path))
    assert code == 0, output
    report = json.loads((tmp_path / "equilibrium_endpoints.json").read_text(encoding="utf-8"))
    assert report["correction_available"] is False
    header = (tmp_path / "equilibrium_density.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "x[1],sigma0[1]"


@pytest.mark.slow
def test_kdv(tmp_path: Path) -> None:
    """The first two levels of the hierarchy on a fine grid."""
    code, output = _invoke("kdv", "--n", "48", "--out", str(tmp_path))
    assert code == 0, output
    header = (tmp_path / "kdv.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "x[1],u[1],f1[1],f2[1]"


def test_verify_subset(tmp_path: Path) -> None:
    """Selected checks run and land in verify.json."""
    code, output = _invoke(
        "verify", "--check", "bessel_form", "--check", "first_order_det", "--out", str(tmp_path)
    )
    assert code == 0, output
    report = json.loads((tmp_path / "verify.json").read_text(encoding="utf-8"))
    assert [c["name"] for c in report["checks"]] == ["first_order_det", "bessel_form"]
    assert report["failed"] == 0


def test_verify_tight_tolerance_fails(tmp_path: Path) -> None:
    """An unreachable tolerance is a numeric failure."""
    code, _ = _invoke("verify", "--check", "andreief", "--tol", "1e-16", "--out", str(tmp_path))
    assert code == 1
    report = json.loads((tmp_path / "verify.json").read_text(encoding="utf-8"))
    assert report["failed"] == 1


def test_verify_unknown_check(tmp_path: Path) -> None:
    """Unknown check names are usage errors."""
    code, output = _invoke("verify", "--check", "nonsense", "--out", str(tmp_path))
    assert code == 2
    assert "nonsense" in output
