"""
Per-invocation options shared by every command.
"""

from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, PositiveFloat, PositiveInt, field_validator

from graph_entropy.graph import as_length
from graph_entropy.settings import EntropyConfig, resolve


class OutputFormat(str, Enum):
    HUMAN = "human"
    STRUCTURED = "structured"


class RunConfig(BaseModel):
    """Global flags plus the command and input they apply to."""

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    command: Optional[str] = None
    input: Optional[Path] = None
    tol_root: Optional[PositiveFloat] = None
    tol_residual: Optional[PositiveFloat] = None
    r_max: Optional[Fraction] = None
    samples: Optional[PositiveInt] = None
    seed: int = 0
    format: OutputFormat = OutputFormat.HUMAN
    dump_matrix: bool = False

    @field_validator("r_max", mode="before")
    @classmethod
    def positive_radius(cls, value: Any) -> Optional[Fraction]:
        if value is None:
            return None
        radius = as_length(value)
        if radius <= 0:
            raise ValueError(f"r_max must be positive, got {radius}")
        return radius

    @property
    def structured(self) -> bool:
        return self.format is OutputFormat.STRUCTURED

    def entropy_config(self, base: EntropyConfig | None = None) -> EntropyConfig:
        """Library config with this run's overrides applied."""
        solver = {"root_tol": self.tol_root, "residual_tol": self.tol_residual}
        optimizer = {"samples": self.samples, "seed": self.seed}
        return resolve(base).with_overrides(
            entropy={k: v for k, v in solver.items() if v is not None},
            optimizer={k: v for k, v in optimizer.items() if v is not None},
        )
