"""Command-line interface for taukernel.

Exit codes: 0 when every reported residual is within tolerance, 1 on a
numerical failure, 2 on a usage or configuration error.
"""

import itertools
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any, NoReturn, Optional

import numpy as np
import typer
from pydantic import BaseModel, ConfigDict, ValidationError
from rich.console import Console
from rich.table import Table

from taukernel.cli.artifacts import heatmap_svg, polyline_svg, write_json, write_table
from taukernel.config import (
    RunConfig,
    build_run_config,
    defaults,
    get_settings,
    load_config_file,
)
from taukernel.core.errors import ConfigError, DomainError, TaukernelError
from taukernel.core.logs import configure_logging
from taukernel.core.parallel import sweep
from taukernel.coulomb import (
    correction_rho_tilde,
    critical_xi,
    endpoints_u0,
    normalization_error,
    sigma0_measure,
    singular_integral_residual,
)
from taukernel.hankel_products import (
    hankel_product_matrix,
    laguerre_factorization,
    laguerre_identity_check,
)
from taukernel.linsys import DiscreteLinearSystem, kdv_hierarchy_check
from taukernel.operators import (
    AiryHalf,
    BesselK1,
    HowlandWeight,
    RankOneExp,
    ScatteringFunction,
    default_rule,
    envelope_by_name,
    tau_function,
)
from taukernel.painleve import barnes_formula_check, hankel_det, is_decreasing_in_s
from taukernel.sinh_gordon import phase_grid
from taukernel.specfun import halfline_rule
from taukernel.verify import check_names, run_verify

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="taukernel",
    help="Fredholm determinants, tau functions and Coulomb-fluid identities",
    add_completion=True,
)
console = Console()

LAGUERRE_SAMPLES = (0.5, 1.0, 2.0, 3.0, 4.0)

ConfigOption = typer.Option(None, "--config", help="Flat 'key = value' config file")
NodesOption = typer.Option(None, "--n", help="Quadrature nodes N (16..2000)")
OutOption = typer.Option(None, "--out", help="Output directory")
FormatOption = typer.Option(None, "--format", help="Comma list of csv, json")
TolOption = typer.Option(None, "--tol", help="Tolerance override")
VerboseOption = typer.Option(False, "--verbose", "-v", help="Log at INFO level")


def _fail(message: str, code: int) -> NoReturn:
    console.print(f"[red]✗[/red] {message}")
    raise typer.Exit(code=code)


def _load(config: Optional[Path], verbose: bool, **overrides: Any) -> RunConfig:
    configure_logging("INFO" if verbose else get_settings().log_level)
    file_values = load_config_file(config) if config is not None else None
    return build_run_config(file_values, overrides)


def _run(
    body: Callable[..., bool],
    config: Optional[Path],
    verbose: bool,
    **overrides: Any,
) -> None:
    """Load the config, run ``body`` and translate the outcome to an exit code."""
    try:
        cfg = _load(config, verbose, **overrides)
        passed = body(cfg)
    except (ConfigError, ValidationError, DomainError) as exc:
        _fail(f"usage error: {exc}", 2)
    except TaukernelError as exc:
        _fail(f"{type(exc).__name__}: {exc}", 1)
    if not passed:
        _fail("residuals exceed tolerance", 1)
    console.print("[green]✓[/green] all residuals within tolerance")


def _summary(title: str, rows: list[tuple[str, str]]) -> None:
    table = Table(title=title)
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")
    for name, value in rows:
        table.add_row(name, value)
    console.print(table)


def _x_grid(cfg: RunConfig, points: int) -> np.ndarray:
    return np.linspace(cfg.x_min, cfg.x_max, points)


# sinh-gordon ------------------------------------------------------------------


def _sinh_gordon(cfg: RunConfig) -> bool:
    tol = cfg.tol or defaults.SINH_GORDON_TOL
    rule = halfline_rule(cfg.n)
    x = _x_grid(cfg, cfg.grid_points)
    t = np.linspace(cfg.t_min, cfg.t_max, cfg.grid_points)
    grid = phase_grid(
        envelope_by_name(cfg.envelope), x, t, rule, step=cfg.step, max_workers=cfg.workers
    )
    cells = list(itertools.product(range(t.size), range(x.size)))
    write_table(
        cfg.out,
        "sinh_gordon_phase",
        [("x", ""), ("t", ""), ("S", ""), ("V", ""), ("W", "")],
        [(x[j], t[i], grid.S[i, j], grid.V_diag[i, j], grid.W_diag[i, j]) for i, j in cells],
        cfg.formats,
    )
    write_table(
        cfg.out,
        "sinh_gordon_residual",
        [("x", ""), ("t", ""), ("residual", ""), ("discretization", "")],
        [(x[j], t[i], grid.residual_sg[i, j], grid.discretization[i, j]) for i, j in cells],
        cfg.formats,
    )
    heatmap_svg(
        cfg.out / "sinh_gordon_residual.svg",
        grid.residual_sg,
        x,
        t,
        "|S_xt - 2 sinh 2S|",
    )
    _summary(
        "sinh-Gordon",
        [
            ("envelope", cfg.envelope),
            ("N", str(cfg.n)),
            ("max residual", f"{grid.max_residual:.3e}"),
            ("mean residual", f"{grid.mean_residual:.3e}"),
            ("max discretization", f"{grid.max_discretization:.3e}"),
            ("tolerance", f"{tol:.1e}"),
        ],
    )
    return grid.max_residual <= tol and grid.max_discretization <= tol


@app.command("sinh-gordon")
def sinh_gordon(
    config: Optional[Path] = ConfigOption,
    n: Optional[int] = NodesOption,
    out: Optional[Path] = OutOption,
    fmt: Optional[str] = FormatOption,
    tol: Optional[float] = TolOption,
    envelope: Optional[str] = typer.Option(None, "--envelope", help="exp, inv-exp, one, zero"),
    verbose: bool = VerboseOption,
) -> None:
    """Phase S(x;t) on a grid and the sinh-Gordon residual."""
    _run(
        _sinh_gordon, config, verbose, n=n, out=out, formats=fmt, tol=tol, envelope=envelope
    )


# tau ---------------------------------------------------------------------------


def _scattering(cfg: RunConfig, rule_n: int) -> ScatteringFunction:
    if cfg.family == "howland":
        return HowlandWeight.from_envelope(
            envelope_by_name(cfg.envelope), cfg.t, halfline_rule(rule_n)
        )
    if cfg.family == "rank-one":
        return RankOneExp()
    if cfg.family == "bessel":
        return BesselK1(s=2.0 * cfg.t)
    return AiryHalf()


def _tau(cfg: RunConfig) -> bool:
    function = _scattering(cfg, cfg.n)
    x = _x_grid(cfg, cfg.samples)
    rule = default_rule(function, cfg.x_min, cfg.n)
    profile = tau_function(function, rule, x, max_workers=cfg.workers)
    write_table(
        cfg.out,
        "tau",
        [("x", ""), ("log_tau", ""), ("sign", ""), ("u", "")],
        list(zip(profile.x, profile.log_tau, profile.sign, profile.u, strict=True)),
        cfg.formats,
    )
    polyline_svg(cfg.out / "tau.svg", x, {"log tau": profile.log_tau, "u": profile.u}, "tau")
    _summary(
        "tau function",
        [
            ("family", cfg.family),
            ("x window", f"[{cfg.x_min:g}, {cfg.x_max:g}]"),
            ("log tau range", f"[{profile.log_tau.min():.6g}, {profile.log_tau.max():.6g}]"),
        ],
    )
    return bool(np.all(np.isfinite(profile.log_tau)))


@app.command()
def tau(
    config: Optional[Path] = ConfigOption,
    n: Optional[int] = NodesOption,
    out: Optional[Path] = OutOption,
    fmt: Optional[str] = FormatOption,
    family: Optional[str] = typer.Option(None, "--family", help="howland, rank-one, bessel, airy"),
    verbose: bool = VerboseOption,
) -> None:
    """tau(x) = det(I + Gamma_phi(x)) and u = -2 (log tau)''."""
    _run(_tau, config, verbose, n=n, out=out, formats=fmt, family=family)


# hankel-det --------------------------------------------------------------------


class BarnesRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    relative_error: float
    passed: bool


class HankelDetRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    s: float
    log_abs: float
    sign: float
    condition_raw: float
    condition_equilibrated: float


class HankelDetReport(BaseModel):
    """JSON shape of ``hankel-det``."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    rows: list[HankelDetRow]
    barnes: list[BarnesRow]
    decreasing_in_s: dict[int, bool]


def _hankel_det(cfg: RunConfig) -> bool:
    tol = cfg.tol or defaults.BARNES_TOL
    orders = range(1, cfg.n_max + 1)
    pairs = list(itertools.product(orders, cfg.s_values))
    results = sweep(lambda p: hankel_det(cfg.alpha, p[1], p[0]), pairs, cfg.workers)
    rows = [
        HankelDetRow(
            n=r.n,
            s=r.s,
            log_abs=r.log_abs,
            sign=r.sign,
            condition_raw=r.condition_raw,
            condition_equilibrated=r.condition_equilibrated,
        )
        for r in results
    ]
    barnes = []
    for order in orders:
        error = barnes_formula_check(cfg.alpha, order)
        barnes.append(BarnesRow(n=order, relative_error=error, passed=error <= tol))
    decreasing = {
        order: is_decreasing_in_s(cfg.alpha, order, cfg.s_values) if len(cfg.s_values) > 1 else True
        for order in orders
    }
    report = HankelDetReport(alpha=cfg.alpha, rows=rows, barnes=barnes, decreasing_in_s=decreasing)
    write_table(
        cfg.out,
        "hankel_det",
        [("n", ""), ("s", ""), ("log_abs_D", ""), ("sign", ""), ("condition", "")],
        [(r.n, r.s, r.log_abs, r.sign, r.condition_equilibrated) for r in rows],
        [f for f in cfg.formats if f == "csv"],
    )
    if "json" in cfg.formats:
        write_json(cfg.out / "hankel_det.json", report)
    _summary(
        f"Hankel determinants, alpha = {cfg.alpha:g}",
        [(f"Barnes n={b.n}", f"{b.relative_error:.2e}") for b in barnes]
        + [(f"decreasing n={k}", str(v)) for k, v in decreasing.items()],
    )
    return all(b.passed for b in barnes) and all(decreasing.values())


@app.command("hankel-det")
def hankel_det_command(
    config: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
    fmt: Optional[str] = FormatOption,
    tol: Optional[float] = TolOption,
    alpha: Optional[float] = typer.Option(None, "--alpha", help="Laguerre exponent >= 0"),
    n_max: Optional[int] = typer.Option(None, "--n-max", help="Largest order (<= 8)"),
    s: Optional[str] = typer.Option(None, "--s", help="Comma list of s >= 0"),
    verbose: bool = VerboseOption,
) -> None:
    """D_n(s) for y^alpha exp(-y - s/y) with the Barnes check at s = 0."""
    _run(
        _hankel_det,
        config,
        verbose,
        out=out,
        formats=fmt,
        tol=tol,
        alpha=alpha,
        n_max=n_max,
        s_values=s,
    )


# equilibrium -------------------------------------------------------------------


class EquilibriumReport(BaseModel):
    """JSON shape of ``equilibrium``."""

    model_config = ConfigDict(frozen=True)

    xi: float
    a: float
    b: float
    a_root_find: float
    b_root_find: float
    closed_form_agreement: float
    normalization_error: float
    singular_integral_residual: float
    critical_xi: float
    correction_available: bool


def _equilibrium(cfg: RunConfig) -> bool:
    xi = cfg.xi
    ends = endpoints_u0(xi)
    measure = sigma0_measure(xi)
    x = np.linspace(ends.a, ends.b, cfg.samples)
    density = measure.density(x)
    series = {"sigma0": density}
    columns = [("x", ""), ("sigma0", "")]
    corrected = xi < critical_xi()
    if corrected:
        inner = x[1:-1]
        rho = np.zeros_like(x)
        rho[1:-1] = correction_rho_tilde(xi, inner)
        series["rho_tilde"] = rho
        columns.append(("rho_tilde", ""))
    rows = list(zip(*[x, *series.values()], strict=True))
    write_table(cfg.out, "equilibrium_density", columns, rows, ["csv"])
    polyline_svg(cfg.out / "equilibrium_density.svg", x, series, f"sigma_0, xi = {xi:g}")
    report = EquilibriumReport(
        xi=xi,
        a=ends.a,
        b=ends.b,
        a_root_find=ends.a_numeric,
        b_root_find=ends.b_numeric,
        closed_form_agreement=ends.closed_form_agreement,
        normalization_error=normalization_error(measure),
        singular_integral_residual=singular_integral_residual(xi),
        critical_xi=critical_xi(),
        correction_available=corrected,
    )
    write_json(cfg.out / "equilibrium_endpoints.json", report)
    _summary(
        f"equilibrium measure, xi = {xi:g}",
        [
            ("support", f"[{ends.a:.12g}, {ends.b:.12g}]"),
            ("normalization error", f"{report.normalization_error:.2e}"),
            ("singular-integral residual", f"{report.singular_integral_residual:.2e}"),
        ],
    )
    return (
        report.normalization_error <= (cfg.tol or defaults.NORMALIZATION_TOL)
        and report.singular_integral_residual <= (cfg.tol or defaults.SINGULAR_INTEGRAL_TOL)
        and report.closed_form_agreement <= defaults.ENDPOINT_TOL
    )


@app.command()
def equilibrium(
    config: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
    tol: Optional[float] = TolOption,
    xi: Optional[float] = typer.Option(None, "--xi", help="xi in (0, 1/2)"),
    samples: Optional[int] = typer.Option(None, "--samples", help="Density sample count"),
    verbose: bool = VerboseOption,
) -> None:
    """sigma_0 for u_0 with its endpoints and singular-integral residual."""
    _run(_equilibrium, config, verbose, out=out, tol=tol, xi=xi, samples=samples)


# hankel-product ----------------------------------------------------------------


def _hankel_product(cfg: RunConfig) -> bool:
    tol = cfg.tol or defaults.LAGUERRE_TOL
    order = cfg.laguerre_n
    samples = list(itertools.product(LAGUERRE_SAMPLES, repeat=2))
    checks = sweep(lambda p: laguerre_identity_check(order, p[0], p[1]), samples, cfg.workers)
    write_table(
        cfg.out,
        "hankel_product",
        [("z", ""), ("w", ""), ("wronskian", ""), ("hankel_product", ""), ("relative", "")],
        [(c.z, c.w, c.lhs, c.rhs, c.relative) for c in checks],
        cfg.formats,
    )
    matrix = hankel_product_matrix(laguerre_factorization(order), halfline_rule(cfg.n))
    worst = max(c.relative for c in checks)
    _summary(
        f"Laguerre Hankel product, n = {order}",
        [
            ("max relative residual", f"{worst:.2e}"),
            ("trace K", f"{matrix.trace:.12g}"),
            ("HS norm", f"{matrix.hs_norm:.12g}"),
        ],
    )
    return worst <= tol


@app.command("hankel-product")
def hankel_product(
    config: Optional[Path] = ConfigOption,
    n: Optional[int] = NodesOption,
    out: Optional[Path] = OutOption,
    fmt: Optional[str] = FormatOption,
    tol: Optional[float] = TolOption,
    order: Optional[int] = typer.Option(None, "--order", help="Laguerre degree"),
    verbose: bool = VerboseOption,
) -> None:
    """Wronskian kernel of the Laguerre functions against the Hankel product."""
    _run(
        _hankel_product,
        config,
        verbose,
        n=n,
        out=out,
        formats=fmt,
        tol=tol,
        laguerre_n=order,
    )


# kdv ---------------------------------------------------------------------------


def _kdv(cfg: RunConfig) -> bool:
    sys = DiscreteLinearSystem.from_envelope(
        envelope_by_name(cfg.envelope), cfg.t, halfline_rule(cfg.n)
    )
    x = _x_grid(cfg, cfg.samples)
    check = kdv_hierarchy_check(sys, x, cfg.ell_max, max_workers=cfg.workers)
    levels = range(1, cfg.ell_max + 1)
    columns = [("x", ""), ("u", "")] + [(f"f{ell}", "") for ell in levels]
    rows = list(zip(x, check.u, *[check.levels[ell] for ell in levels], strict=True))
    write_table(cfg.out, "kdv", columns, rows, cfg.formats)
    polyline_svg(cfg.out / "kdv.svg", x, {"u": check.u}, "dressed potential u")
    tolerances = {ell: cfg.tol or defaults.KDV_TOL[ell - 1] for ell in levels}
    _summary(
        "KdV hierarchy",
        [(f"level {ell}", f"{check.residuals[ell]:.2e} (tol {tolerances[ell]:.0e})") for ell in levels],
    )
    return all(check.residuals[ell] <= tolerances[ell] for ell in levels)


@app.command()
def kdv(
    config: Optional[Path] = ConfigOption,
    n: Optional[int] = NodesOption,
    out: Optional[Path] = OutOption,
    fmt: Optional[str] = FormatOption,
    tol: Optional[float] = TolOption,
    ell_max: Optional[int] = typer.Option(None, "--ell-max", help="Highest level, 1..3"),
    verbose: bool = VerboseOption,
) -> None:
    """Recurrence residuals of the KdV hierarchy along x."""
    _run(_kdv, config, verbose, n=n, out=out, formats=fmt, tol=tol, ell_max=ell_max)


# verify ------------------------------------------------------------------------


def _verify(cfg: RunConfig, only: list[str] | None) -> bool:
    report = run_verify(tol=cfg.tol, max_workers=cfg.workers, seed=cfg.seed, only=only)
    write_json(cfg.out / "verify.json", report)
    table = Table(title=f"verify: {report.total - report.failed}/{report.total} passed")
    table.add_column("Check", style="cyan")
    table.add_column("Criterion", justify="right")
    table.add_column("Residual", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Status")
    for rec in report.checks:
        residual = "n/a" if rec.residual is None else f"{rec.residual:.2e}"
        status = "[green]✓[/green]" if rec.passed else f"[red]✗[/red] {rec.error or ''}"
        table.add_row(rec.name, str(rec.criterion), residual, f"{rec.tolerance:.0e}", status)
    console.print(table)
    return report.passed


@app.command()
def verify(
    config: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
    tol: Optional[float] = TolOption,
    check: Optional[list[str]] = typer.Option(None, "--check", help="Run only these checks"),
    verbose: bool = VerboseOption,
) -> None:
    """Run every identity check and write verify.json."""
    if check:
        unknown = sorted(set(check) - set(check_names()))
        if unknown:
            _fail(f"usage error: unknown checks {', '.join(unknown)}", 2)
    _run(lambda cfg: _verify(cfg, check or None), config, verbose, out=out, tol=tol)


if __name__ == "__main__":
    app()
