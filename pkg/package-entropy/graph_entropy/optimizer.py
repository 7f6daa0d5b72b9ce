"""
Closed-form minimal volume entropy and the entropy-minimizing normalized
metric for graphs whose vertices all have valency at least three:

    h_min = 1/2 * sum_x (k_x + 1) log k_x
    l(e)  = log(k_i(e) k_t(e)) / sum_x (k_x + 1) log k_x

At the minimum y_f = exp(-h l(f)) x_f depends only on i(f); with
z_x = y_f for i(f) = x this integrates to z_x ~ k_x^(-1/2) and
x_e ~ k_t(e)^(1/2).
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np
from loguru import logger

from graph_entropy.entropy import volume_entropy
from graph_entropy.errors import GraphValidationError
from graph_entropy.graph import (
    Link,
    MetricGraph,
    as_length,
    normalize,
    oriented,
    series_reduce,
    with_lengths,
)
from graph_entropy.settings import EntropyConfig, resolve

UNIQUE = "unique"
CHAIN_TOTALS_ONLY = "chain-totals-only"


@dataclass(frozen=True, eq=False)
class MinimalMetricResult:
    h_min: float
    lengths: Mapping[str, float]
    perron: Mapping[str, float]
    z: Mapping[str, float]
    canonical: str = UNIQUE
    chains: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    chain_totals: Mapping[str, float] = field(default_factory=dict)

    def metric(self, g: MetricGraph) -> MetricGraph:
        """``g`` carrying the minimizing lengths (floats converted exactly)."""
        return with_lengths(g, self.lengths)


@dataclass(frozen=True)
class MinimalityReport:
    h_min: float
    samples: int
    seed: int
    min_entropy: float
    violations: int
    unexpected_equalities: int
    entropies: tuple[float, ...]


def _require_valency_three(g: MetricGraph) -> None:
    low = [x for x in g.vertices if g.valency(x) < 3]
    if low:
        raise GraphValidationError(f"some valency < 3 (vertices {low})", witness=low)


def _vertex_weight(g: MetricGraph) -> float:
    """sum_x (k_x + 1) log k_x"""
    return math.fsum(g.valency(x) * math.log(g.k(x)) for x in g.vertices)


def minimal_entropy(g: MetricGraph) -> float:
    _require_valency_three(g)
    return 0.5 * _vertex_weight(g)


def minimal_metric(g: MetricGraph) -> MinimalMetricResult:
    _require_valency_three(g)
    total = _vertex_weight(g)
    lengths = {
        link.id: math.log(g.k(link.u) * g.k(link.v)) / total for link in g.links
    }
    k_min = min(g.k(x) for x in g.vertices)
    k_max = max(g.k(x) for x in g.vertices)
    z = {x: math.sqrt(k_min / g.k(x)) for x in g.vertices}
    perron = {e: math.sqrt(g.k(g.edge(e).terminus) / k_max) for e in g.edge_ids}
    return MinimalMetricResult(
        h_min=0.5 * total,
        lengths=MappingProxyType(lengths),
        perron=MappingProxyType(perron),
        z=MappingProxyType(z),
    )


def minimize_with_reduction(g: MetricGraph) -> MinimalMetricResult:
    """Minimal metric on any graph meeting the entropy hypotheses.

    Chains through valency-2 vertices get their optimal total length split
    evenly; only the chain totals are canonical.
    """
    reduction = series_reduce(g)
    base = minimal_metric(reduction.graph)
    if reduction.is_identity:
        return base

    h = base.h_min
    lengths: dict[str, float] = {}
    for new_id, chain in reduction.chains.items():
        piece = base.lengths[new_id] / len(chain)
        for e in chain:
            lengths[g.edge(e).link] = piece

    perron: dict[str, float] = {}
    for new_id, chain in reduction.chains.items():
        backward = tuple(g.edge(e).reversal for e in reversed(chain))
        for path, sign in ((chain, "+"), (backward, "-")):
            value = base.perron[oriented(new_id, sign)]
            perron[path[-1]] = value
            for current, following in zip(reversed(path[:-1]), reversed(path[1:])):
                value *= math.exp(-h * lengths[g.edge(following).link])
                perron[current] = value
    top = max(perron.values())
    logger.debug("pulled minimal metric back through {} chains", len(reduction.chains))
    return MinimalMetricResult(
        h_min=h,
        lengths=MappingProxyType(lengths),
        perron=MappingProxyType({e: perron[e] / top for e in g.edge_ids}),
        z=base.z,
        canonical=CHAIN_TOTALS_ONLY,
        chains=reduction.chains,
        chain_totals=base.lengths,
    )


def _check_int(name: str, value: int, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise GraphValidationError(f"{name} must be an integer >= {minimum}, got {value!r}")


def biregular_minimum(k1: int, k2: int, edge_count: int) -> tuple[float, Fraction]:
    """(|EX|/4) log(k1 k2) and the uniform length 2/|EX|."""
    _check_int("k1", k1, 2)
    _check_int("k2", k2, 2)
    _check_int("edge_count", edge_count, 2)
    if edge_count % 2:
        raise GraphValidationError(f"edge_count counts oriented edges and must be even, got {edge_count}")
    return edge_count / 4 * math.log(k1 * k2), Fraction(2, edge_count)


def regular_minimum(k: int, edge_count: int) -> tuple[float, Fraction]:
    """(|EX|/2) log k for a (k+1)-regular graph."""
    return biregular_minimum(k, k, edge_count)


def split_vertex(
    g: MetricGraph,
    x: str,
    partition: tuple[Sequence[str], Sequence[str]],
    new_vertex: str | None = None,
    new_edge: str | None = None,
    length: object = None,
) -> MetricGraph:
    """Replace ``x`` by ``x`` and a new vertex ``y`` joined by a new edge.

    ``partition[0]`` stays at ``x``, ``partition[1]`` moves to ``y``; the new
    edge runs from ``x`` to ``y`` and gets ``length`` (default l_min).
    """
    if g.valency(x) < 4:
        raise GraphValidationError(f"valency < 4 at {x!r}")
    kept, moved = (tuple(part) for part in partition)
    outgoing = set(g.outgoing(x))
    if set(kept) & set(moved) or set(kept) | set(moved) != outgoing or len(kept) + len(moved) != len(outgoing):
        raise GraphValidationError(f"partition must split the outgoing edges of {x!r}")
    if len(kept) < 2 or len(moved) < 2:
        raise GraphValidationError("each side of the partition needs at least two edges")

    y = new_vertex or f"{x}'"
    while y in g.vertices:
        y += "'"
    f = new_edge or f"split_{y}"
    if f in g.lengths:
        raise GraphValidationError(f"edge id {f!r} already in use")

    moved_set = set(moved)
    links = [
        Link(
            link.id,
            y if oriented(link.id, "+") in moved_set else link.u,
            y if oriented(link.id, "-") in moved_set else link.v,
            link.length,
        )
        for link in g.links
    ]
    links.append(Link(f, x, y, as_length(length) if length is not None else g.l_min))
    return MetricGraph(g.vertices + (y,), tuple(links))


def resolve_to_trivalent(g: MetricGraph) -> list[tuple[MetricGraph, float]]:
    """Peel two edges off a vertex of valency >= 4 until all valencies are 3.

    Returns every intermediate graph with its minimal entropy.
    """
    steps = [(g, minimal_entropy(g))]
    current = g
    while True:
        heavy = [x for x in current.vertices if current.valency(x) >= 4]
        if not heavy:
            return steps
        x = heavy[0]
        outgoing = current.outgoing(x)
        current = split_vertex(current, x, (outgoing[2:], outgoing[:2]))
        steps.append((current, minimal_entropy(current)))


def min_entropy_free_rank(r: int) -> float:
    """3(r - 1) log 2, attained by trivalent graphs with equal lengths."""
    _check_int("r", r, 2)
    return 3 * (r - 1) * math.log(2)


def initial_vertex_spread(g: MetricGraph, h: float, perron: Mapping[str, float]) -> float:
    """max over vertices of the relative spread of {y_f : i(f) = x}."""
    spread = 0.0
    for x in g.vertices:
        ys = [math.exp(-h * float(g.length(f))) * perron[f] for f in g.outgoing(x)]
        spread = max(spread, (max(ys) - min(ys)) / max(ys))
    return spread


def perron_ratio_defect(g: MetricGraph, result: MinimalMetricResult) -> float:
    """Largest relative deviation from y_e / y_f = sqrt(k_t(e) / k_i(e))
    over consecutive edges e, f."""
    h = result.h_min
    y = {e: math.exp(-h * result.lengths[g.edge(e).link]) * result.perron[e] for e in g.edge_ids}
    defect = 0.0
    for e in g.edge_ids:
        edge = g.edge(e)
        expected = math.sqrt(g.k(edge.terminus) / g.k(edge.origin))
        for f in g.outgoing(edge.terminus):
            if f != edge.reversal:
                defect = max(defect, abs(y[e] / y[f] - expected) / expected)
    return defect


def sample_minimality(
    g: MetricGraph,
    samples: int | None = None,
    seed: int | None = None,
    config: EntropyConfig | None = None,
) -> MinimalityReport:
    """Solve the entropy of Dirichlet-random normalized metrics on ``g``."""
    config = resolve(config)
    settings = config.optimizer
    samples = samples if samples is not None else settings.samples
    seed = seed if seed is not None else settings.seed
    optimum = minimal_metric(g)
    link_ids = [link.id for link in g.links]
    target = np.array([optimum.lengths[i] for i in link_ids])

    entropies = []
    violations = unexpected = 0
    for child in np.random.SeedSequence(seed).spawn(samples):
        rng = np.random.default_rng(child)
        weights = rng.dirichlet(np.full(len(link_ids), settings.dirichlet_alpha))
        weights = np.maximum(weights, np.finfo(np.float64).tiny)
        metric = normalize(with_lengths(g, dict(zip(link_ids, weights.tolist()))))
        h = volume_entropy(metric, config).h
        entropies.append(h)
        if h < optimum.h_min - config.entropy.residual_tol:
            violations += 1
        lengths = np.array([float(metric.lengths[i]) for i in link_ids])
        at_optimum = np.abs(lengths - target).max() <= settings.length_tol
        if abs(h - optimum.h_min) <= config.entropy.residual_tol and not at_optimum:
            unexpected += 1
    logger.debug("sampled {} metrics, min h {:.12g} vs h_min {:.12g}", samples, min(entropies), optimum.h_min)
    return MinimalityReport(
        h_min=optimum.h_min,
        samples=samples,
        seed=seed,
        min_entropy=min(entropies),
        violations=violations,
        unexpected_equalities=unexpected,
        entropies=tuple(entropies),
    )
