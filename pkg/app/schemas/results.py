"""
Result payloads, one per command. Exact rationals travel as "p/q" strings
and path counts as decimal strings.
"""

from typing import Any, Optional

from pydantic import BaseModel


class CheckSchema(BaseModel):
    name: str
    passed: bool
    witness: Any = None


# =========================
# GRAPH
# =========================

class ValidationResult(BaseModel):
    ok: bool
    vertices: int
    edges: int
    free_rank: int
    volume: str
    irreducible: Optional[bool] = None
    checks: list[CheckSchema]


class VolumeResult(BaseModel):
    volume: str
    volume_float: float
    edges: int
    free_rank: int
    l_min: str
    l_max: str


class ReduceResult(BaseModel):
    graph: dict
    chains: dict[str, list[str]]
    reduced: bool


# =========================
# ENTROPY
# =========================

class EntropyResult(BaseModel):
    h: float
    residual: float
    bracket: tuple[float, float]
    iterations: int
    bisection_steps: int
    vector: dict[str, float]
    matrix: Optional[list[str]] = None


class GridPointSchema(BaseModel):
    r: str
    count: str


class OracleResult(BaseModel):
    base: str
    r_max: str
    h_est: float
    band: float
    fit_error: float
    apriori_width: float
    cycle_period: str
    grid: list[GridPointSchema]


# =========================
# MINIMIZE
# =========================

class SamplingResult(BaseModel):
    samples: int
    seed: int
    min_entropy: float
    violations: int
    unexpected_equalities: int


class MinimizeResult(BaseModel):
    h_min: float
    canonical: str
    lengths: dict[str, float]
    perron: dict[str, float]
    z: dict[str, float]
    chains: dict[str, list[str]] = {}
    chain_totals: dict[str, float] = {}
    sampling: Optional[SamplingResult] = None


# =========================
# GRAPHS OF GROUPS
# =========================

class GogEntropyResult(BaseModel):
    h: float
    residual: float
    bracket: tuple[float, float]
    volume: str
    vertex_volume: str
    degrees: dict[str, int]
    vector: dict[str, float]


class GogMinimizeResult(BaseModel):
    h_min: float
    degrees: dict[str, int]
    lengths: dict[str, float]
    perron: dict[str, float]
    z: dict[str, float]


class InequalitySchema(BaseModel):
    lhs: float
    rhs: float
    gap: float
    equality: bool
    proportional: bool
    scale: float
    source_h_min: float
    target_h_min: float


class CoverCheckResult(BaseModel):
    ok: bool
    sheets: Optional[int] = None
    checks: list[CheckSchema]
    inequality: Optional[InequalitySchema] = None
