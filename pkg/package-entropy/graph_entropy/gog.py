"""
Finite graphs of groups, given by the orders of their vertex and edge groups.

The Bass-Serre tree has valency deg(x) = sum_{i(e)=x} |G_x| / |G_e| above x,
and the non-backtracking continuations of an edge e in the tree project to

    m_ef  = |G_t(e)| / |G_f|       if i(f) = t(e) and f != reverse(e)
    m_eē  = |G_t(e)| / |G_e| - 1

which replaces rho_ef in the entropy equation. All quantities in here only
need group orders.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Mapping

from loguru import logger

from graph_entropy.entropy import EntropySolution, solve_entropy
from graph_entropy.errors import GraphValidationError, HypothesisError, ReducibleMatrixError
from graph_entropy.graph import (
    BACKWARD,
    FORWARD,
    HypothesisCheck,
    Link,
    MetricGraph,
    with_lengths,
)
from graph_entropy.optimizer import MinimalMetricResult
from graph_entropy.processing.validation import CoverDocument, GraphDocument, parse_document
from graph_entropy.settings import EntropyConfig, resolve
from graph_entropy.spectral import EdgeAdjacency, edge_lengths


@dataclass(frozen=True)
class GraphOfGroups:
    """Underlying graph plus |G_x| per vertex and |G_e| per unoriented edge.

    Missing orders default to 1. ``has_lengths`` is False when the document
    carried no lengths; the graph then holds placeholder unit lengths.
    """

    graph: MetricGraph
    vertex_order: Mapping[str, int] = field(default_factory=dict)
    edge_order: Mapping[str, int] = field(default_factory=dict)
    has_lengths: bool = True

    def __post_init__(self) -> None:
        unknown = (set(self.vertex_order) - set(self.graph.vertices)) | (
            set(self.edge_order) - set(self.graph.lengths)
        )
        if unknown:
            raise GraphValidationError(f"group orders given for unknown ids {sorted(unknown)}")
        vertex_order = {x: int(self.vertex_order.get(x, 1)) for x in self.graph.vertices}
        edge_order = {link.id: int(self.edge_order.get(link.id, 1)) for link in self.graph.links}
        if min([*vertex_order.values(), *edge_order.values()]) < 1:
            raise GraphValidationError("group orders must be positive integers")
        for link in self.graph.links:
            for endpoint in (link.u, link.v):
                if vertex_order[endpoint] % edge_order[link.id]:
                    raise GraphValidationError(
                        f"|G_{link.id}| = {edge_order[link.id]} does not divide "
                        f"|G_{endpoint}| = {vertex_order[endpoint]}",
                        witness=link.id,
                    )
        object.__setattr__(self, "vertex_order", MappingProxyType(vertex_order))
        object.__setattr__(self, "edge_order", MappingProxyType(edge_order))

    def order(self, edge_id: str) -> int:
        """|G_e| of an oriented edge (shared with its reversal)."""
        return self.edge_order[self.graph.edge(edge_id).link]

    def index(self, edge_id: str) -> int:
        """|G_i(e)| / |G_e|: number of lifts of e at a lift of i(e)."""
        return self.vertex_order[self.graph.edge(edge_id).origin] // self.order(edge_id)

    def k(self, x: str) -> int:
        return degree(self, x) - 1


def build_gog(data: Any) -> GraphOfGroups:
    """GraphOfGroups from a graph document; lengths are all-or-nothing."""
    document = parse_document(GraphDocument, data)
    given = [edge.length is not None for edge in document.edges]
    if any(given) and not all(given):
        raise GraphValidationError("lengths must be given on every edge or on none")
    links = tuple(
        Link(edge.id or f"e{index}", edge.u, edge.v, edge.length if edge.length is not None else 1)
        for index, edge in enumerate(document.edges)
    )
    graph = MetricGraph(tuple(document.vertices), links)
    groups = document.groups
    return GraphOfGroups(
        graph,
        groups.vertex_orders if groups else {},
        groups.edge_orders if groups else {},
        has_lengths=all(given),
    )


def degree(gog: GraphOfGroups, x: str) -> int:
    return sum(gog.index(e) for e in gog.graph.outgoing(x))


def _require_lengths(gog: GraphOfGroups) -> None:
    if not gog.has_lengths:
        raise GraphValidationError("graph of groups has no lengths")


def _require_degree_three(gog: GraphOfGroups) -> None:
    low = [x for x in gog.graph.vertices if degree(gog, x) < 3]
    if low:
        raise HypothesisError(f"degree < 3 at {low}", report=low)


def gog_volume(gog: GraphOfGroups) -> Fraction:
    """1/2 * sum over oriented edges of l(e) / |G_e|."""
    _require_lengths(gog)
    return sum((link.length / gog.edge_order[link.id] for link in gog.graph.links), Fraction(0))


def vertex_volume(gog: GraphOfGroups) -> Fraction:
    """sum_x 1 / |G_x|"""
    return sum((Fraction(1, n) for n in gog.vertex_order.values()), Fraction(0))


def multiplicity_adjacency(gog: GraphOfGroups) -> EdgeAdjacency:
    g = gog.graph
    entries: dict[tuple[str, str], int] = {}
    for e in g.edge_ids:
        edge = g.edge(e)
        for f in g.outgoing(edge.terminus):
            entries[(e, f)] = gog.index(f) - 1 if f == edge.reversal else gog.index(f)
    return EdgeAdjacency.from_entries(g.edge_ids, entries)


def gog_entropy(gog: GraphOfGroups, config: EntropyConfig | None = None) -> EntropySolution:
    """Volume entropy of the Bass-Serre tree with the lifted metric."""
    _require_lengths(gog)
    _require_degree_three(gog)
    adjacency = multiplicity_adjacency(gog)
    if not adjacency.is_strongly_connected:
        raise ReducibleMatrixError("multiplicity matrix is reducible", witness=adjacency.components)
    return solve_entropy(adjacency, edge_lengths(gog.graph), config)


def gog_minimal_entropy(gog: GraphOfGroups) -> float:
    _require_degree_three(gog)
    return 0.5 * math.fsum(
        degree(gog, x) * math.log(gog.k(x)) / gog.vertex_order[x] for x in gog.graph.vertices
    )


def gog_minimal_metric(gog: GraphOfGroups) -> MinimalMetricResult:
    """l(e) proportional to log(k_i(e) k_t(e)), scaled to gog_volume 1."""
    _require_degree_three(gog)
    g = gog.graph
    raw = {link.id: math.log(gog.k(link.u) * gog.k(link.v)) for link in g.links}
    scale = 1.0 / math.fsum(raw[i] / gog.edge_order[i] for i in raw)
    ks = [gog.k(x) for x in g.vertices]
    return MinimalMetricResult(
        h_min=0.5 / scale,
        lengths=MappingProxyType({i: scale * value for i, value in raw.items()}),
        perron=MappingProxyType(
            {e: math.sqrt(gog.k(g.edge(e).terminus) / max(ks)) for e in g.edge_ids}
        ),
        z=MappingProxyType({x: math.sqrt(min(ks) / gog.k(x)) for x in g.vertices}),
    )


# --- coverings ---


@dataclass(frozen=True)
class CoveringMap:
    """phi: (Y, H) -> (X, G) on vertices and oriented edges."""

    source: GraphOfGroups
    target: GraphOfGroups
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]


@dataclass(frozen=True)
class CoveringReport:
    checks: tuple[HypothesisCheck, ...]
    sheets: int | None = None

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def first_failure(self) -> HypothesisCheck | None:
        return next((c for c in self.checks if not c.passed), None)


@dataclass(frozen=True)
class CoveringInequality:
    lhs: float
    rhs: float
    gap: float
    equality: bool
    proportional: bool
    scale: float
    sheets: int
    source_h_min: float
    target_h_min: float


def _signed(edge_id: str) -> str:
    return edge_id if edge_id[-1:] in (FORWARD, BACKWARD) else edge_id + FORWARD


def _flip(edge_id: str) -> str:
    return edge_id[:-1] + (BACKWARD if edge_id[-1] == FORWARD else FORWARD)


def build_cover(data: Any) -> CoveringMap:
    document = parse_document(CoverDocument, data)
    source, target = build_gog(document.source), build_gog(document.target)
    edge_map: dict[str, str] = {}
    for key, value in document.emap.items():
        image = _signed(value)
        if key[-1:] in (FORWARD, BACKWARD):
            edge_map[key] = image
        else:
            edge_map[key + FORWARD] = image
            edge_map[key + BACKWARD] = _flip(image)
    return CoveringMap(source, target, MappingProxyType(dict(document.vmap)), MappingProxyType(edge_map))


def _first_violation(items) -> Any:
    return next(iter(items), None)


def check_covering(cover: CoveringMap) -> CoveringReport:
    """Verify the covering conditions; report the first violation per check."""
    Y, X = cover.source, cover.target
    phi_v, phi_e = cover.vertex_map, cover.edge_map

    bad_vertex = _first_violation(y for y in Y.graph.vertices if phi_v.get(y) not in set(X.graph.vertices))
    bad_edge = _first_violation(f for f in Y.graph.edge_ids if phi_e.get(f) not in X.graph.edges)
    checks = [
        HypothesisCheck("vertex_map", bad_vertex is None, bad_vertex),
        HypothesisCheck("edge_map", bad_edge is None, bad_edge),
    ]
    if bad_vertex is not None or bad_edge is not None:
        return CoveringReport(tuple(checks))

    def endpoints_commute(f: str) -> bool:
        lift, image = Y.graph.edge(f), X.graph.edge(phi_e[f])
        return phi_v[lift.origin] == image.origin and phi_v[lift.terminus] == image.terminus

    bad = _first_violation(f for f in Y.graph.edge_ids if not endpoints_commute(f))
    checks.append(HypothesisCheck("endpoints", bad is None, bad))
    bad = _first_violation(
        f for f in Y.graph.edge_ids if phi_e[Y.graph.edge(f).reversal] != X.graph.edge(phi_e[f]).reversal
    )
    checks.append(HypothesisCheck("reversal", bad is None, bad))

    local = None
    for y in Y.graph.vertices:
        x = phi_v[y]
        for e in X.graph.outgoing(x):
            lifted = sum(
                Fraction(Y.index(f)) for f in Y.graph.outgoing(y) if phi_e[f] == e
            )
            if lifted != X.index(e):
                local = (y, e, str(lifted), X.index(e))
                break
        if local:
            break
    checks.append(HypothesisCheck("local_condition", local is None, local))

    vertex_sheets = {
        x: sum(
            (Fraction(X.vertex_order[x], Y.vertex_order[y]) for y in Y.graph.vertices if phi_v[y] == x),
            Fraction(0),
        )
        for x in X.graph.vertices
    }
    edge_sheets = {
        e: sum(
            (Fraction(X.order(e), Y.order(f)) for f in Y.graph.edge_ids if phi_e[f] == e),
            Fraction(0),
        )
        for e in X.graph.edge_ids
    }
    n = vertex_sheets[X.graph.vertices[0]]
    bad = _first_violation((x, str(s)) for x, s in vertex_sheets.items() if s != n)
    if bad is None and (n.denominator != 1 or n < 1):
        bad = (X.graph.vertices[0], str(n))
    checks.append(HypothesisCheck("vertex_sheets", bad is None, bad))
    bad = _first_violation((e, str(s)) for e, s in edge_sheets.items() if s != n)
    checks.append(HypothesisCheck("edge_sheets", bad is None, bad))

    report = CoveringReport(tuple(checks))
    if report.ok:
        report = CoveringReport(tuple(checks), sheets=int(n))
    logger.debug("covering check: ok={} sheets={}", report.ok, report.sheets)
    return report


def covering_inequality(
    cover: CoveringMap,
    lengths: Mapping[str, Any] | None = None,
    config: EntropyConfig | None = None,
) -> CoveringInequality:
    """h(Y, H, d) vol(Y, H, d) >= n h_min(X, G), with the equality case.

    ``lengths`` (by unoriented source edge id) replace the source lengths.
    """
    config = resolve(config)
    report = check_covering(cover)
    if not report.ok:
        raise GraphValidationError(f"not a covering: {report.first_failure}", witness=report)
    source = cover.source
    if lengths is not None:
        source = GraphOfGroups(
            with_lengths(source.graph, lengths), source.vertex_order, source.edge_order, has_lengths=True
        )
    n = report.sheets

    lhs = gog_entropy(source, config).h * float(gog_volume(source))
    optimum = gog_minimal_metric(cover.target)
    rhs = n * optimum.h_min
    gap = lhs - rhs

    ratios = [
        float(source.graph.length(f)) / optimum.lengths[cover.target.graph.edge(cover.edge_map[f]).link]
        for f in source.graph.edge_ids
    ]
    scale = math.fsum(ratios) / len(ratios)
    proportional = max(abs(r - scale) for r in ratios) <= config.covering.proportionality_tol * scale
    equality = abs(gap) < config.covering.equality_gap
    return CoveringInequality(
        lhs=lhs,
        rhs=rhs,
        gap=gap,
        equality=equality,
        proportional=proportional,
        scale=scale,
        sheets=n,
        source_h_min=gog_minimal_entropy(source),
        target_h_min=optimum.h_min,
    )
