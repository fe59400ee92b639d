"""Scalar special-function results with an error estimate."""

import math
from dataclasses import dataclass

from taukernel.core.errors import ConvergenceError


@dataclass(frozen=True)
class SpecialValue:
    """A computed value and an estimate of its absolute error."""

    value: float
    abs_error_bound: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ConvergenceError(f"non-finite special value {self.value}")
        if not self.abs_error_bound >= 0:
            raise ConvergenceError("error bound must be nonnegative")

    def __float__(self) -> float:
        return self.value


__all__ = ["SpecialValue"]
