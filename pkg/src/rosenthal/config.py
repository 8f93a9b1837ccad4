"""Run configuration shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from rosenthal.errors import DomainError

#: Generator family used for every Monte-Carlo stream (counter-based, so
#: partitioned sampling stays reproducible).
GENERATOR_NAME = "philox4x64"

#: Hard ceiling on series terms before a BudgetError.
MAX_TERMS = 5_000_000


def default_rel_tol(p: float) -> float:
    """Tail tolerance: tight for moderate exponents, relaxed for huge ones
    where log-scale accumulation itself costs ~1 ulp per term."""
    return 1e-13 if p <= 1e3 else 1e-10


@dataclass(frozen=True)
class RunConfig:
    """CLI-level configuration; all fields have usable defaults."""

    tolerance: float | None = None  # None = per-p default
    output_format: str = "text"  # csv | json | text
    output_path: Path | None = None
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        if self.tolerance is not None and not (1e-15 <= self.tolerance <= 1e-3):
            raise DomainError(
                f"tolerance must be in [1e-15, 1e-3], got {self.tolerance!r}")
        if self.output_format not in ("csv", "json", "text"):
            raise DomainError(f"unknown output format {self.output_format!r}")
        if self.threads < 1:
            raise DomainError("threads must be a positive integer")

    def rel_tol(self, p: float) -> float:
        return self.tolerance if self.tolerance is not None else default_rel_tol(p)
