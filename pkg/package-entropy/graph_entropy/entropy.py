"""
Volume entropy as the unique h > 0 with lambda(h) = 1, where lambda(h) is the
Perron root of A'(h). The Perron vector at that h solves the linear system

    x_e = sum_f rho_ef * exp(-h * l(f)) * x_f    for every oriented edge e.
"""

from dataclasses import dataclass
from typing import Mapping

import numpy as np
from loguru import logger

from graph_entropy.errors import (
    BracketError,
    ConvergenceError,
    GraphValidationError,
    ReducibleMatrixError,
)
from graph_entropy.graph import MetricGraph, require_entropy_hypotheses, volume
from graph_entropy.settings import EntropyConfig, resolve
from graph_entropy.spectral import (
    EdgeAdjacency,
    PerronResult,
    WeightedEdgeMatrix,
    edge_adjacency,
    edge_lengths,
    is_irreducible,
    spectral_radius,
    weight,
    weighted_matrix,
)


@dataclass(frozen=True, eq=False)
class EntropySolution:
    h: float
    values: np.ndarray
    edges: tuple[str, ...]
    bracket: tuple[float, float]
    residual: float
    radius: float
    bisection_steps: int
    power_iterations: int

    @property
    def vector(self) -> dict[str, float]:
        return {e: float(x) for e, x in zip(self.edges, self.values)}


@dataclass(frozen=True)
class FixedPointReport:
    max_residual: float
    mean_residual: float
    worst_edge: str


def fixed_point_residuals(m: WeightedEdgeMatrix, values: np.ndarray) -> np.ndarray:
    return np.abs(values - m.matrix @ values)


def solve_entropy(
    adjacency: EdgeAdjacency,
    lengths: np.ndarray,
    config: EntropyConfig | None = None,
) -> EntropySolution:
    """Bisection on lambda(h) - 1 for any irreducible nonnegative integer
    adjacency (rho for graphs, multiplicities for graphs of groups).

    A'(h) depends on h only through h * length, so the search runs on lengths
    divided by the longest one and h is rescaled at the end. The bracket and
    ``root_tol`` stay in the caller's length units.
    """
    config = resolve(config)
    settings = config.entropy
    if not adjacency.is_strongly_connected:
        raise ReducibleMatrixError("adjacency is reducible", witness=adjacency.components)

    unit = float(lengths.max())
    lengths = lengths / unit
    tolerance = settings.root_tol * unit
    power_iterations = 0

    def evaluate(h: float, start: np.ndarray | None) -> PerronResult:
        nonlocal power_iterations
        result = spectral_radius(weight(adjacency, lengths, h, config), config, start)
        power_iterations += result.iterations
        return result

    at_zero = evaluate(0.0, None)
    if at_zero.radius <= 1.0:
        raise BracketError(f"lambda(0) = {at_zero.radius:.15g} <= 1, entropy is not positive")

    lo, hi = 0.0, 1.0
    upper = evaluate(hi, at_zero.values)
    doublings = 0
    while upper.radius >= 1.0:
        doublings += 1
        if doublings > settings.max_doublings:
            raise BracketError(f"lambda(h) >= 1 up to h = {hi / unit}")
        lo, hi = hi, 2.0 * hi
        upper = evaluate(hi, upper.values)
    logger.debug("entropy bracket [{}, {}] after {} doublings", lo / unit, hi / unit, doublings)

    start = upper.values
    steps = 0
    while hi - lo > tolerance:
        steps += 1
        if steps > settings.max_bisection_steps:
            raise BracketError(f"bisection did not reach width {settings.root_tol}")
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        result = evaluate(mid, start)
        start = result.values
        if result.radius > 1.0:
            lo = mid
        elif result.radius < 1.0:
            hi = mid
        else:
            lo = hi = mid

    h = 0.5 * (lo + hi)
    final = evaluate(h, start)
    residual = float(fixed_point_residuals(weight(adjacency, lengths, h, config), final.values).max())
    if residual > settings.residual_tol:
        raise ConvergenceError("fixed-point residual above tolerance", power_iterations, residual)
    logger.debug("volume entropy h={:.15g} in {} bisection steps", h / unit, steps)
    return EntropySolution(
        h=h / unit,
        values=final.values,
        edges=adjacency.edges,
        bracket=(lo / unit, hi / unit),
        residual=residual,
        radius=final.radius,
        bisection_steps=steps,
        power_iterations=power_iterations,
    )


def volume_entropy(g: MetricGraph, config: EntropyConfig | None = None) -> EntropySolution:
    require_entropy_hypotheses(g)
    irreducibility = is_irreducible(g)
    if not irreducibility.irreducible:
        raise ReducibleMatrixError("edge adjacency is reducible", witness=irreducibility.components)
    return solve_entropy(edge_adjacency(g), edge_lengths(g), config)


def spectral_function(g: MetricGraph, h: float, config: EntropyConfig | None = None) -> float:
    """lambda(h), the Perron root of A'(h)."""
    return spectral_radius(weighted_matrix(g, h, config), config).radius


def verify_fixed_point(
    g: MetricGraph,
    h: float,
    x: Mapping[str, float] | np.ndarray,
    config: EntropyConfig | None = None,
) -> FixedPointReport:
    m = weighted_matrix(g, h, config)
    if isinstance(x, Mapping):
        values = np.array([float(x[e]) for e in m.base.edges])
    else:
        values = np.asarray(x, dtype=np.float64)
    if values.shape != (m.base.order,) or values.min() <= 0:
        raise GraphValidationError("x must be a strictly positive vector over all oriented edges")
    residuals = fixed_point_residuals(m, values)
    worst = int(residuals.argmax())
    return FixedPointReport(
        max_residual=float(residuals.max()),
        mean_residual=float(residuals.mean()),
        worst_edge=m.base.edges[worst],
    )


def entropy_volume_product(g: MetricGraph, config: EntropyConfig | None = None) -> float:
    return volume_entropy(g, config).h * float(volume(g))
