"""
Finite connected metric multigraphs with oriented edges.

Lengths are exact rationals (``fractions.Fraction``) everywhere in the data
model. Every unoriented edge ("link") ``id`` materializes two oriented edges,
``id+`` from ``u`` to ``v`` and ``id-`` back; loops and parallel edges are
allowed, and a loop contributes 2 to the valency of its vertex.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Any, Mapping

import networkx as nx
from loguru import logger

from graph_entropy.errors import GraphValidationError, HypothesisError

FORWARD = "+"
BACKWARD = "-"
CHAIN_SEPARATOR = "~"


def as_length(value: Any) -> Fraction:
    """Convert ints, ``"p/q"`` strings, Fractions and finite floats exactly."""
    if isinstance(value, bool):
        raise GraphValidationError(f"invalid length {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise GraphValidationError(f"invalid length {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphValidationError(f"invalid length {value!r}") from exc
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise GraphValidationError(f"invalid length {value!r}") from exc


def oriented(link_id: str, sign: str = FORWARD) -> str:
    return f"{link_id}{sign}"


@dataclass(frozen=True)
class OrientedEdge:
    id: str
    reversal: str
    origin: str
    terminus: str
    link: str

    @property
    def is_loop(self) -> bool:
        return self.origin == self.terminus


@dataclass(frozen=True)
class Link:
    """Unoriented edge carrying the length shared by both orientations."""

    id: str
    u: str
    v: str
    length: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "length", as_length(self.length))


@dataclass(frozen=True)
class MetricGraph:
    """Immutable connected metric multigraph.

    Vertices and links are stored sorted by identifier, so two graphs built
    from the same description in any order compare equal.
    """

    vertices: tuple[str, ...]
    links: tuple[Link, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "links", tuple(sorted(self.links, key=lambda link: link.id)))
        self._check()

    def _check(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphValidationError("duplicate vertex identifier")
        if not self.vertices:
            raise GraphValidationError("graph has no vertices")
        known = set(self.vertices)
        seen: set[str] = set()
        for link in self.links:
            if not link.id or link.id[-1] in (FORWARD, BACKWARD):
                raise GraphValidationError(
                    f"edge id {link.id!r} must be non-empty and not end with '+' or '-'"
                )
            if link.id in seen:
                raise GraphValidationError(f"duplicate edge id {link.id!r}")
            seen.add(link.id)
            for endpoint in (link.u, link.v):
                if endpoint not in known:
                    raise GraphValidationError(
                        f"dangling endpoint reference {endpoint!r} on edge {link.id!r}",
                        witness=endpoint,
                    )
            if link.length <= 0:
                raise GraphValidationError(
                    f"non-positive length {link.length} on edge {link.id!r}", witness=link.id
                )
        isolated = [x for x in self.vertices if not self._outgoing[x]]
        if isolated and len(self.vertices) == 1:
            raise GraphValidationError("vertex of valency 0", witness=isolated)
        components = [sorted(c) for c in nx.connected_components(self.multigraph())]
        if len(components) > 1:
            components.sort()
            raise GraphValidationError(
                f"disconnected graph with {len(components)} components: {components}",
                witness=components,
            )

    # --- derived structure ---

    @cached_property
    def edges(self) -> Mapping[str, OrientedEdge]:
        table: dict[str, OrientedEdge] = {}
        for link in self.links:
            fwd, bwd = oriented(link.id, FORWARD), oriented(link.id, BACKWARD)
            table[fwd] = OrientedEdge(fwd, bwd, link.u, link.v, link.id)
            table[bwd] = OrientedEdge(bwd, fwd, link.v, link.u, link.id)
        return MappingProxyType(dict(sorted(table.items())))

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(self.edges)

    @cached_property
    def _links_by_id(self) -> Mapping[str, Link]:
        return MappingProxyType({link.id: link for link in self.links})

    @cached_property
    def _outgoing(self) -> Mapping[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {x: [] for x in self.vertices}
        for edge in self.edges.values():
            out[edge.origin].append(edge.id)
        return MappingProxyType({x: tuple(ids) for x, ids in out.items()})

    @property
    def lengths(self) -> Mapping[str, Fraction]:
        """Lengths by unoriented edge id."""
        return MappingProxyType({link.id: link.length for link in self.links})

    def link(self, link_id: str) -> Link:
        try:
            return self._links_by_id[link_id]
        except KeyError as exc:
            raise GraphValidationError(f"unknown edge {link_id!r}") from exc

    def edge(self, edge_id: str) -> OrientedEdge:
        try:
            return self.edges[edge_id]
        except KeyError as exc:
            raise GraphValidationError(f"unknown oriented edge {edge_id!r}") from exc

    def length(self, edge_id: str) -> Fraction:
        """Length of an oriented edge (equal to that of its reversal)."""
        return self._links_by_id[self.edge(edge_id).link].length

    def outgoing(self, x: str) -> tuple[str, ...]:
        try:
            return self._outgoing[x]
        except KeyError as exc:
            raise GraphValidationError(f"unknown vertex {x!r}") from exc

    def valency(self, x: str) -> int:
        return len(self.outgoing(x))

    def k(self, x: str) -> int:
        return self.valency(x) - 1

    @property
    def l_max(self) -> Fraction:
        return max(link.length for link in self.links)

    @property
    def l_min(self) -> Fraction:
        return min(link.length for link in self.links)

    def multigraph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for link in self.links:
            graph.add_edge(link.u, link.v, key=link.id, length=link.length)
        return graph

    def is_subdivided(self) -> bool:
        return any(self.valency(x) == 2 for x in self.vertices)


# --- construction ---


def build_graph(data: Any) -> MetricGraph:
    """Build a MetricGraph from a graph description.

    ``data`` is a ``GraphDocument`` or any mapping with ``vertices`` and
    ``edges`` (each edge ``{u, v, length, id?}``).
    """
    from graph_entropy.processing.validation import GraphDocument, parse_document

    document = data if isinstance(data, GraphDocument) else parse_document(GraphDocument, data)
    links = []
    for index, edge in enumerate(document.edges):
        if edge.length is None:
            raise GraphValidationError(f"missing length on edge {edge.id or index!r}")
        links.append(Link(edge.id or f"e{index}", edge.u, edge.v, edge.length))
    return MetricGraph(tuple(document.vertices), tuple(links))


def with_lengths(g: MetricGraph, lengths: Mapping[str, Any]) -> MetricGraph:
    """Copy of ``g`` with lengths replaced for the listed unoriented edges."""
    unknown = set(lengths) - set(g.lengths)
    if unknown:
        raise GraphValidationError(f"unknown edges {sorted(unknown)}")
    links = tuple(
        Link(link.id, link.u, link.v, as_length(lengths.get(link.id, link.length)))
        for link in g.links
    )
    return MetricGraph(g.vertices, links)


def relabel(
    g: MetricGraph,
    vertex_map: Mapping[str, str] | None = None,
    link_map: Mapping[str, str] | None = None,
) -> MetricGraph:
    vertex_map = vertex_map or {}
    link_map = link_map or {}
    rename = lambda x: vertex_map.get(x, x)  # noqa: E731
    links = tuple(
        Link(link_map.get(link.id, link.id), rename(link.u), rename(link.v), link.length)
        for link in g.links
    )
    return MetricGraph(tuple(rename(x) for x in g.vertices), links)


# --- metric quantities ---


def volume(g: MetricGraph) -> Fraction:
    """Half the sum over oriented edges, i.e. the sum over unoriented edges."""
    return sum((link.length for link in g.links), Fraction(0))


def scale_metric(g: MetricGraph, alpha: Any) -> MetricGraph:
    factor = as_length(alpha)
    if factor <= 0:
        raise GraphValidationError(f"scale factor must be positive, got {factor}")
    return with_lengths(g, {link.id: link.length * factor for link in g.links})


def normalize(g: MetricGraph) -> MetricGraph:
    total = volume(g)
    if total == 1:
        return g
    return with_lengths(g, {link.id: link.length / total for link in g.links})


def free_rank(g: MetricGraph) -> int:
    """Rank of the free fundamental group: |E| - |V| + 1 over unoriented edges."""
    return len(g.links) - len(g.vertices) + 1


# --- hypotheses ---


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    witness: Any = None


@dataclass(frozen=True)
class HypothesisReport:
    checks: tuple[HypothesisCheck, ...]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> HypothesisCheck:
        return next(c for c in self.checks if c.name == name)

    @property
    def failures(self) -> tuple[HypothesisCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


def validate_entropy_hypotheses(g: MetricGraph) -> HypothesisReport:
    """Report on: no terminal vertex, not a single cycle, connected."""
    terminal = [x for x in g.vertices if g.valency(x) == 1]
    branch = [x for x in g.vertices if g.valency(x) >= 3]
    if branch:
        not_cycle = HypothesisCheck("not_cycle", True, branch[0])
    elif all(g.valency(x) == 2 for x in g.vertices):
        not_cycle = HypothesisCheck("not_cycle", False, "graph is a cycle")
    else:
        not_cycle = HypothesisCheck("not_cycle", False, "no vertex of valency >= 3")
    components = [sorted(c) for c in nx.connected_components(g.multigraph())]
    return HypothesisReport(
        (
            HypothesisCheck("no_terminal_vertex", not terminal, terminal or None),
            not_cycle,
            HypothesisCheck("connected", len(components) == 1, components),
        )
    )


def require_entropy_hypotheses(g: MetricGraph) -> HypothesisReport:
    report = validate_entropy_hypotheses(g)
    if not report.ok:
        detail = "; ".join(f"{c.name}: {c.witness}" for c in report.failures)
        raise HypothesisError(f"hypotheses violated ({detail})", report=report)
    return report


# --- series reduction ---


@dataclass(frozen=True)
class Reduction:
    """Series-reduced graph and, per new edge id, the chain of original
    oriented edges traversed along the new edge's ``+`` orientation."""

    graph: MetricGraph
    chains: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    @property
    def is_identity(self) -> bool:
        return all(len(chain) == 1 for chain in self.chains.values())


def series_reduce(g: MetricGraph) -> Reduction:
    """Replace every maximal chain through valency-2 vertices by one edge."""
    report = validate_entropy_hypotheses(g)
    if not report.check("not_cycle").passed and report.check("no_terminal_vertex").passed:
        raise GraphValidationError("graph is a cycle; reduction would erase all vertices")
    if not report.ok:
        raise HypothesisError("series reduction needs a graph without terminal vertices", report)

    if not g.is_subdivided():
        return Reduction(g, MappingProxyType({link.id: (oriented(link.id),) for link in g.links}))

    branch = {x for x in g.vertices if g.valency(x) >= 3}
    visited: set[str] = set()
    links: list[Link] = []
    chains: dict[str, tuple[str, ...]] = {}
    for x in sorted(branch):
        for start in g.outgoing(x):
            first = g.edge(start)
            if first.link in visited:
                continue
            chain = [start]
            visited.add(first.link)
            current = first
            while current.terminus not in branch:
                step = next(f for f in g.outgoing(current.terminus) if f != current.reversal)
                current = g.edge(step)
                chain.append(step)
                visited.add(current.link)
            if len(chain) == 1:
                links.append(g.link(first.link))
                chains[first.link] = (oriented(first.link),)
                continue
            new_id = CHAIN_SEPARATOR.join(g.edge(e).link for e in chain)
            total = sum((g.length(e) for e in chain), Fraction(0))
            links.append(Link(new_id, x, current.terminus, total))
            chains[new_id] = tuple(chain)
    logger.debug(
        "series reduction: {} edges -> {} edges, {} chains",
        len(g.links),
        len(links),
        sum(len(c) > 1 for c in chains.values()),
    )
    return Reduction(MetricGraph(tuple(sorted(branch)), tuple(links)), MappingProxyType(chains))

