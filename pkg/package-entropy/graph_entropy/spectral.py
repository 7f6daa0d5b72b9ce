"""
Non-backtracking edge adjacency, irreducibility, the h-weighted matrix A'(h)
and its Perron-Frobenius root by power iteration.
"""

from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Mapping

import networkx as nx
import numpy as np
from loguru import logger
from scipy import sparse

from graph_entropy.errors import (
    ConvergenceError,
    GraphValidationError,
    HypothesisError,
    InternalConsistencyError,
    NumericalError,
    ReducibleMatrixError,
)
from graph_entropy.graph import MetricGraph, validate_entropy_hypotheses
from graph_entropy.settings import EntropyConfig, resolve


@dataclass(frozen=True, eq=False)
class EdgeAdjacency:
    """Sparse nonnegative integer matrix indexed by sorted oriented edge ids.

    For a plain graph the entries are rho_ef (0/1); graphs of groups reuse the
    type with integer multiplicities.
    """

    edges: tuple[str, ...]
    pattern: sparse.csr_matrix

    @classmethod
    def from_entries(cls, edges: tuple[str, ...], entries: Mapping[tuple[str, str], int]) -> "EdgeAdjacency":
        index = {e: i for i, e in enumerate(edges)}
        rows, cols, data = [], [], []
        for (e, f), value in sorted(entries.items()):
            if value:
                rows.append(index[e])
                cols.append(index[f])
                data.append(value)
        n = len(edges)
        pattern = sparse.csr_matrix((data, (rows, cols)), shape=(n, n), dtype=np.int64)
        pattern.sort_indices()
        return cls(edges, pattern)

    @property
    def order(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> Mapping[str, int]:
        return MappingProxyType({e: i for i, e in enumerate(self.edges)})

    def entry(self, e: str, f: str) -> int:
        return int(self.pattern[self.index[e], self.index[f]])

    def row_sums(self) -> dict[str, int]:
        sums = np.asarray(self.pattern.sum(axis=1)).ravel()
        return {e: int(s) for e, s in zip(self.edges, sums)}

    def nonzero(self) -> list[tuple[str, str, int]]:
        coo = self.pattern.tocoo()
        triples = sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))
        return [(self.edges[i], self.edges[j], int(v)) for i, j, v in triples]

    @cached_property
    def digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.edges)
        graph.add_edges_from((e, f) for e, f, _ in self.nonzero())
        return graph

    @cached_property
    def components(self) -> tuple[tuple[str, ...], ...]:
        """Strongly connected components, each sorted, largest first."""
        sccs = [tuple(sorted(c)) for c in nx.strongly_connected_components(self.digraph)]
        return tuple(sorted(sccs, key=lambda c: (-len(c), c)))

    @property
    def is_strongly_connected(self) -> bool:
        return len(self.components) == 1


@dataclass(frozen=True, eq=False)
class WeightedEdgeMatrix:
    """rho_ef * exp(-h * l(f)); dense below the configured edge count."""

    base: EdgeAdjacency
    h: float
    lengths: np.ndarray
    matrix: np.ndarray | sparse.csr_matrix

    @property
    def is_dense(self) -> bool:
        return isinstance(self.matrix, np.ndarray)

    def toarray(self) -> np.ndarray:
        return self.matrix if self.is_dense else self.matrix.toarray()


@dataclass(frozen=True, eq=False)
class PerronResult:
    radius: float
    values: np.ndarray
    edges: tuple[str, ...]
    iterations: int
    residual: float
    shifted: bool
    bounds: tuple[float, float]

    @property
    def vector(self) -> dict[str, float]:
        return {e: float(x) for e, x in zip(self.edges, self.values)}


@dataclass(frozen=True)
class Irreducibility:
    irreducible: bool
    components: tuple[tuple[str, ...], ...]
    valency_criterion: bool


def edge_adjacency(g: MetricGraph) -> EdgeAdjacency:
    entries: dict[tuple[str, str], int] = {}
    for e in g.edge_ids:
        edge = g.edge(e)
        for f in g.outgoing(edge.terminus):
            if f != edge.reversal:
                entries[(e, f)] = 1
    return EdgeAdjacency.from_entries(g.edge_ids, entries)


def is_irreducible(g: MetricGraph) -> Irreducibility:
    """Strong connectivity of the non-backtracking digraph, cross-checked
    against "some vertex has valency at least three"."""
    report = validate_entropy_hypotheses(g)
    if not report.check("no_terminal_vertex").passed:
        raise HypothesisError("irreducibility needs a graph without terminal vertices", report)
    adjacency = edge_adjacency(g)
    by_valency = any(g.valency(x) >= 3 for x in g.vertices)
    if adjacency.is_strongly_connected != by_valency:
        raise InternalConsistencyError(
            f"SCC test ({adjacency.is_strongly_connected}) and valency test ({by_valency}) disagree"
        )
    return Irreducibility(adjacency.is_strongly_connected, adjacency.components, by_valency)


def edge_lengths(g: MetricGraph, edges: tuple[str, ...] | None = None) -> np.ndarray:
    return np.array([float(g.length(e)) for e in (edges or g.edge_ids)], dtype=np.float64)


def weight(
    adjacency: EdgeAdjacency,
    lengths: np.ndarray,
    h: float,
    config: EntropyConfig | None = None,
) -> WeightedEdgeMatrix:
    if h < 0 or not np.isfinite(h):
        raise GraphValidationError(f"h must be a nonnegative real, got {h}")
    config = resolve(config)
    column_weights = np.exp(-h * lengths)
    if adjacency.order < config.spectral.dense_threshold:
        matrix = adjacency.pattern.toarray().astype(np.float64) * column_weights[np.newaxis, :]
    else:
        matrix = sparse.csr_matrix(adjacency.pattern.astype(np.float64) @ sparse.diags(column_weights))
    return WeightedEdgeMatrix(adjacency, float(h), lengths, matrix)


def weighted_matrix(g: MetricGraph, h: float, config: EntropyConfig | None = None) -> WeightedEdgeMatrix:
    return weight(edge_adjacency(g), edge_lengths(g), h, config)


def collatz_wielandt_bounds(m: WeightedEdgeMatrix, values: np.ndarray) -> tuple[float, float]:
    """min and max of (Mv)_e / v_e; they bracket the Perron root for v > 0."""
    ratios = (m.matrix @ values) / values
    return float(ratios.min()), float(ratios.max())


def spectral_radius(
    m: WeightedEdgeMatrix,
    config: EntropyConfig | None = None,
    start: np.ndarray | None = None,
) -> PerronResult:
    """Perron root and max-normalized Perron vector by power iteration.

    Iteration starts from the all-ones vector unless ``start`` is given. If
    it has not converged after ``stall_window`` steps the iteration carries on
    with M + I, whose Perron root is larger by exactly one and which is
    aperiodic.
    """
    if not m.base.is_strongly_connected:
        raise ReducibleMatrixError(
            f"matrix is reducible ({len(m.base.components)} strongly connected components)",
            witness=m.base.components,
        )
    settings = resolve(config).spectral
    operator = m.matrix
    v = np.ones(m.base.order) if start is None else np.asarray(start, dtype=np.float64).copy()
    if v.min() <= 0:
        raise GraphValidationError("start vector must be strictly positive")
    v /= v.max()

    shift = 0.0
    previous: float | None = None
    estimate = residual = float("nan")
    for iteration in range(1, settings.max_iterations + 1):
        w = operator @ v
        if shift:
            w = w + shift * v
        estimate = float(w.max())
        if estimate <= 0:
            raise NumericalError("matrix annihilated the iterate; is it nilpotent?")
        residual = float(np.abs(w - estimate * v).max())
        if (
            previous is not None
            and abs(estimate - previous) <= settings.relative_tol * estimate
            and residual <= settings.residual_tol
        ):
            break
        previous = estimate
        v = w / estimate
        if not shift and iteration == settings.stall_window:
            logger.debug("power iteration stalled after {} steps, switching to M + I", iteration)
            shift = 1.0
            previous = None
    else:
        raise ConvergenceError("power iteration did not converge", settings.max_iterations, residual)

    if v.min() <= 0:
        raise NumericalError("Perron vector is not strictly positive")
    radius = estimate - shift
    logger.debug(
        "spectral radius {:.15g} after {} iterations (h={}, shifted={})", radius, iteration, m.h, bool(shift)
    )
    return PerronResult(
        radius=radius,
        values=v,
        edges=m.base.edges,
        iterations=iteration,
        residual=residual,
        shifted=bool(shift),
        bounds=collatz_wielandt_bounds(m, v),
    )


def dump_matrix(m: WeightedEdgeMatrix) -> list[str]:
    """Row-major ``e f value`` lines for the nonzero entries."""
    dense = m.toarray()
    lines = []
    for i, e in enumerate(m.base.edges):
        for j, f in enumerate(m.base.edges):
            if dense[i, j] != 0:
                lines.append(f"{e} {f} {dense[i, j]:.17g}")
    return lines
