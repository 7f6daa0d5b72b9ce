"""
Test fixtures for the graph_entropy package: the small graphs every module
is checked against.
"""

import itertools
from fractions import Fraction

import networkx as nx
import pytest

from graph_entropy.graph import Link, MetricGraph, validate_entropy_hypotheses
from graph_entropy.settings import load_config


def make_graph(vertices, edges):
    """``edges`` is a list of (id, u, v, length)."""
    return MetricGraph(tuple(vertices), tuple(Link(*edge) for edge in edges))


def small_multigraphs(max_vertices=3, max_edges=5, irregular=False):
    """Every connected multigraph (loops allowed) up to the given size with
    no vertex of valency 0 or 1, one representative per edge multiset.

    Lengths are 1, or 1, 3/2, 2, ... in edge order when ``irregular``.
    """
    for n in range(1, max_vertices + 1):
        names = [f"v{i}" for i in range(n)]
        slots = list(itertools.combinations_with_replacement(names, 2))
        for m in range(1, max_edges + 1):
            for chosen in itertools.combinations_with_replacement(slots, m):
                edges = [
                    (f"e{i}", u, v, Fraction(i + 2, 2) if irregular else 1)
                    for i, (u, v) in enumerate(chosen)
                ]
                multigraph = nx.MultiGraph()
                multigraph.add_nodes_from(names)
                multigraph.add_edges_from((u, v) for _, u, v, _ in edges)
                if not nx.is_connected(multigraph):
                    continue
                if min(d for _, d in multigraph.degree()) < 2:
                    continue
                yield make_graph(names, edges)


def entropy_graphs(**kwargs):
    """The small multigraphs that satisfy the entropy hypotheses."""
    return [g for g in small_multigraphs(**kwargs) if validate_entropy_hypotheses(g).ok]


def complete_graph(names, length=1):
    pairs = itertools.combinations(names, 2)
    return make_graph(names, [(f"{u}{v}", u, v, length) for u, v in pairs])


def theta_graph(l1=1, l2=1, l3=1):
    return make_graph("ab", [("e1", "a", "b", l1), ("e2", "a", "b", l2), ("e3", "a", "b", l3)])


def dumbbell_graph(loop_a=1, bridge=1, loop_b=1):
    return make_graph(
        "ab",
        [("la", "a", "a", loop_a), ("ab", "a", "b", bridge), ("lb", "b", "b", loop_b)],
    )


@pytest.fixture
def config():
    """Load package config."""
    return load_config()


@pytest.fixture
def theta():
    return theta_graph()


@pytest.fixture
def k4():
    return complete_graph("abcd")


@pytest.fixture
def k34():
    xs, ys = ["x1", "x2", "x3"], ["y1", "y2", "y3", "y4"]
    return make_graph(xs + ys, [(f"{x}{y}", x, y, 1) for x in xs for y in ys])


@pytest.fixture
def k5():
    return complete_graph("abcde")


@pytest.fixture
def dumbbell():
    return dumbbell_graph()


@pytest.fixture
def cycle4():
    return make_graph("abcd", [("ab", "a", "b", 1), ("bc", "b", "c", 1), ("cd", "c", "d", 1), ("da", "d", "a", 1)])


@pytest.fixture
def path():
    return make_graph("abc", [("ab", "a", "b", 1), ("bc", "b", "c", 1)])


@pytest.fixture
def subdivided_theta():
    """Theta with unit lengths where e1 passes through a midpoint m."""
    return make_graph(
        "abm",
        [("e1", "a", "m", "1/2"), ("e1b", "m", "b", "1/2"), ("e2", "a", "b", 1), ("e3", "a", "b", 1)],
    )


@pytest.fixture
def golden_graphs(theta, k4, k34):
    return {"theta": theta, "k4": k4, "k34": k34}


@pytest.fixture
def test_graphs(golden_graphs, k5, dumbbell, subdivided_theta):
    """Every fixture graph that satisfies the entropy hypotheses, plus
    metrics with unequal lengths."""
    return {
        **golden_graphs,
        "k5": k5,
        "dumbbell": dumbbell,
        "subdivided_theta": subdivided_theta,
        "theta_123": theta_graph(1, 2, 3),
        "dumbbell_uneven": dumbbell_graph("1/2", 3, "5/4"),
    }


@pytest.fixture
def theta_double_cover():
    """Connected double cover of theta (lengths 1/6) over theta (lengths 1/3)."""
    lift = "1/6"
    return {
        "source": {
            "vertices": ["a1", "a2", "b1", "b2"],
            "edges": [
                {"id": "f1", "u": "a1", "v": "b1", "length": lift},
                {"id": "f2", "u": "a2", "v": "b2", "length": lift},
                {"id": "g1", "u": "a1", "v": "b1", "length": lift},
                {"id": "g2", "u": "a2", "v": "b2", "length": lift},
                {"id": "h1", "u": "a1", "v": "b2", "length": lift},
                {"id": "h2", "u": "a2", "v": "b1", "length": lift},
            ],
        },
        "target": {
            "vertices": ["a", "b"],
            "edges": [
                {"id": "e1", "u": "a", "v": "b", "length": "1/3"},
                {"id": "e2", "u": "a", "v": "b", "length": "1/3"},
                {"id": "e3", "u": "a", "v": "b", "length": "1/3"},
            ],
        },
        "vmap": {"a1": "a", "a2": "a", "b1": "b", "b2": "b"},
        "emap": {"f1": "e1", "f2": "e1", "g1": "e2", "g2": "e2", "h1": "e3", "h2": "e3"},
    }
