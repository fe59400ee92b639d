"""Report schema of the verification suite."""

from pydantic import BaseModel, ConfigDict, Field, computed_field


class CheckRecord(BaseModel):
    """One identity check: residual against tolerance."""

    model_config = ConfigDict(frozen=True)

    name: str
    criterion: int = Field(ge=1, le=17)
    description: str
    residual: float | None
    tolerance: float = Field(gt=0)
    passed: bool
    seconds: float = Field(ge=0)
    error: str | None = None
    details: dict[str, float] = Field(default_factory=dict)


class VerifyReport(BaseModel):
    """All check records of one run, in suite order."""

    model_config = ConfigDict(frozen=True)

    checks: list[CheckRecord]
    seconds: float = Field(ge=0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total(self) -> int:
        return len(self.checks)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def failed(self) -> int:
        return sum(not c.passed for c in self.checks)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.failed == 0


__all__ = ["CheckRecord", "VerifyReport"]
