"""Configuration: environment settings, numerical defaults and run parameters."""

from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from taukernel.core.errors import ConfigError


class NumericalDefaults:
    """Numerical constants shared across modules."""

    # Quadrature
    QUADRATURE_NODES = 240
    HALFLINE_SCALE = 1.0
    MIN_NODES = 16
    MAX_NODES = 2000

    # Finite-difference steps
    FD_STEP = 1e-3
    FD_STEP_THIRD = 1e-2
    CROSS_STEP = 5e-3
    MAX_GRID_STEP = 1e-2
    COARSE_GRID_STEP = 0.1

    # Guards
    CONDITION_LIMIT = 1e12
    NORM_THRESHOLD = 0.999
    RESONANCE_GUARD = 1e-8
    SPECTRAL_MARGIN = 1.5
    HS_WARNING = 1e2
    HANKEL_CONDITION_WARNING = 1e14

    # Acceptance tolerances
    DET_EQUIVALENCE_TOL = 1e-7
    SINH_GORDON_TOL = 1e-4
    LINEAR_COUNTERPART_TOL = 1e-8
    PHASE_TOL = 1e-6
    SCHRODINGER_TOL = 1e-4
    GELFAND_LEVITAN_TOL = 1e-6
    HYPERBOLIC_TOL = 1e-3
    HOMOMORPHISM_TOL = 1e-9
    POTENTIAL_TOL = 1e-5
    ASSOCIATIVITY_TOL = 1e-10
    KDV_TOL = (1e-4, 1e-3, 1e-2)
    GREEN_SERIES_TOL = 1e-8
    LAGUERRE_TOL = 1e-8
    BARNES_TOL = 1e-7
    ANDREIEF_TOL = 1e-6
    BESSEL_TOL = 1e-9
    ENDPOINT_TOL = 1e-12
    NORMALIZATION_TOL = 1e-8
    SINGULAR_INTEGRAL_TOL = 1e-5
    VARIATIONAL_TOL = 1e-2
    CORRECTION_TOL = 1e-6
    PV_TOL = 1e-5
    LSI_SLACK = 1e-6
    AIRY_RATIO_TOL = 0.05


class Settings(BaseSettings):
    """Settings loaded from ``TAUKERNEL_*`` environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env", case_sensitive=False, populate_by_name=True, extra="ignore"
    )

    quadrature_nodes: int = Field(
        default=NumericalDefaults.QUADRATURE_NODES, alias="TAUKERNEL_QUADRATURE_NODES"
    )
    output_dir: Path = Field(default=Path("results"), alias="TAUKERNEL_OUTPUT_DIR")
    log_level: str = Field(default="WARNING", alias="TAUKERNEL_LOG_LEVEL")
    max_workers: int = Field(default=4, ge=1, alias="TAUKERNEL_MAX_WORKERS")
    seed: int = Field(default=20240229, alias="TAUKERNEL_SEED")


Format = Literal["csv", "json"]
Envelope = Literal["exp", "inv-exp", "one", "zero"]
TauFamily = Literal["howland", "rank-one", "bessel", "airy"]


class RunConfig(BaseModel):
    """Validated parameters of one CLI run.

    Field names double as config-file keys.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(
        default=NumericalDefaults.QUADRATURE_NODES,
        ge=NumericalDefaults.MIN_NODES,
        le=NumericalDefaults.MAX_NODES,
    )
    out: Path = Path("results")
    formats: tuple[Format, ...] = ("csv",)
    tol: float | None = Field(default=None, gt=0)
    seed: int = 20240229
    workers: int = Field(default=4, ge=1)

    # linear-system family
    envelope: Envelope = "exp"
    t: float = Field(default=1.0, gt=0)
    family: TauFamily = "howland"

    # grid windows
    x_min: float = Field(default=0.8, ge=0)
    x_max: float = Field(default=1.6, gt=0)
    t_min: float = Field(default=0.8, gt=0)
    t_max: float = Field(default=1.6, gt=0)
    grid_points: int = Field(default=9, ge=2, le=401)
    step: float = Field(default=NumericalDefaults.CROSS_STEP, gt=0)
    ell_max: int = Field(default=2, ge=1, le=3)

    # Hankel determinants and products
    alpha: float = Field(default=0.0, ge=0)
    s_values: tuple[float, ...] = (0.0, 0.5, 1.0, 2.0)
    n_max: int = Field(default=8, ge=1, le=8)
    laguerre_n: int = Field(default=1, ge=0, le=12)

    # equilibrium measure
    xi: float = Field(default=0.1, gt=0, lt=0.5)
    samples: int = Field(default=201, ge=3, le=20001)

    @field_validator("formats", mode="before")
    @classmethod
    def _split_formats(cls, value: Any) -> Any:  # noqa: ANN401
        if isinstance(value, str):
            return tuple(v.strip() for v in value.split(",") if v.strip())
        return value

    @field_validator("s_values", mode="before")
    @classmethod
    def _split_floats(cls, value: Any) -> Any:  # noqa: ANN401
        if isinstance(value, str):
            return tuple(float(v) for v in value.split(",") if v.strip())
        return value

    @field_validator("s_values")
    @classmethod
    def _nonnegative(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not value or any(s < 0 for s in value):
            raise ValueError("s_values must be a nonempty list of reals >= 0")
        return value

    @model_validator(mode="after")
    def _windows(self) -> "RunConfig":
        if self.x_min >= self.x_max:
            raise ValueError("x_min must be smaller than x_max")
        if self.t_min >= self.t_max:
            raise ValueError("t_min must be smaller than t_max")
        if not self.formats:
            raise ValueError("at least one output format is required")
        return self


def parse_config_text(text: str) -> dict[str, str]:
    """Parse the flat ``key = value`` config grammar.

    ``#`` starts a comment, blank lines are skipped, and dashes in keys are read
    as underscores.

    Raises
    ------
    ConfigError
        On a line without ``=``, an unknown key, or a repeated key.
    """
    known = set(RunConfig.model_fields)
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key = key.strip().replace("-", "_")
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key '{key}'")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        entries[key] = value.strip()
    return entries


def load_config_file(path: Path) -> dict[str, str]:
    """Read and parse a config file."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text)


def build_run_config(
    file_values: dict[str, str] | None = None,
    overrides: dict[str, Any] | None = None,
    settings: Settings | None = None,
) -> RunConfig:
    """Merge settings, config-file values and flag overrides.

    Later sources win: settings, then the file, then non-``None`` overrides.
    """
    settings = settings or get_settings()
    merged: dict[str, Any] = {
        "n": settings.quadrature_nodes,
        "out": settings.output_dir,
        "seed": settings.seed,
        "workers": settings.max_workers,
    }
    merged.update(file_values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return RunConfig.model_validate(merged)


defaults = NumericalDefaults()


class _SettingsCache:
    """Cache for settings instance to avoid global variable."""

    def __init__(self) -> None:
        self._settings: Settings | None = None

    def get(self) -> Settings:
        """Get cached settings or create new instance."""
        if self._settings is None:
            self._settings = Settings()
        return self._settings

    def reset(self) -> None:
        """Reset cached settings (useful for testing)."""
        self._settings = None


_cache = _SettingsCache()


def get_settings() -> Settings:
    """Get settings instance, creating if needed."""
    return _cache.get()


def reset_settings() -> None:
    """Drop the cached settings so the environment is read again."""
    _cache.reset()


__all__ = [
    "NumericalDefaults",
    "RunConfig",
    "Settings",
    "build_run_config",
    "defaults",
    "get_settings",
    "load_config_file",
    "parse_config_text",
    "reset_settings",
]
