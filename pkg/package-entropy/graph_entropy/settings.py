"""
Numerical configuration for the graph_entropy package.

Defaults ship in config/config.yml; callers override single values with
``EntropyConfig.model_copy(update=...)`` or ``with_overrides``.
"""

import os
from functools import lru_cache

import yaml
from pydantic import BaseModel, ConfigDict, PositiveFloat, PositiveInt

from graph_entropy import CONFIG_DIR


class _Section(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class SpectralConfig(_Section):
    relative_tol: PositiveFloat = 1e-14
    residual_tol: PositiveFloat = 1e-12
    max_iterations: PositiveInt = 1_000_000
    stall_window: PositiveInt = 64
    dense_threshold: PositiveInt = 64


class EntropySolverConfig(_Section):
    root_tol: PositiveFloat = 1e-12
    residual_tol: PositiveFloat = 1e-9
    max_bisection_steps: PositiveInt = 400
    max_doublings: PositiveInt = 200


class OptimizerConfig(_Section):
    samples: PositiveInt = 200
    seed: int = 0
    dirichlet_alpha: PositiveFloat = 1.0
    length_tol: PositiveFloat = 1e-6


class OracleConfig(_Section):
    grid_points: PositiveInt = 12
    min_grid_points: PositiveInt = 4
    min_count: PositiveInt = 1000
    max_cells: PositiveInt = 1_000_000_000
    default_r_max: PositiveInt = 30


class CoveringConfig(_Section):
    equality_gap: PositiveFloat = 1e-6
    proportionality_tol: PositiveFloat = 1e-6


class EntropyConfig(_Section):
    """All tolerances, caps and sampling defaults used by the math modules."""

    package_name: str = "graph_entropy"
    spectral: SpectralConfig = SpectralConfig()
    entropy: EntropySolverConfig = EntropySolverConfig()
    optimizer: OptimizerConfig = OptimizerConfig()
    oracle: OracleConfig = OracleConfig()
    covering: CoveringConfig = CoveringConfig()

    def with_overrides(self, **sections: dict) -> "EntropyConfig":
        """Return a copy with selected section fields replaced.

        ``config.with_overrides(entropy={"root_tol": 1e-10})``
        """
        update = {
            name: getattr(self, name).model_copy(update=values)
            for name, values in sections.items()
            if values
        }
        return self.model_copy(update=update)


def load_config_file() -> dict:
    with open(os.path.join(CONFIG_DIR, "config.yml")) as f:
        return yaml.safe_load(f)


@lru_cache
def load_config() -> EntropyConfig:
    """Return the validated package configuration (cached)."""
    return EntropyConfig(**load_config_file())


def resolve(config: EntropyConfig | None) -> EntropyConfig:
    return config if config is not None else load_config()
