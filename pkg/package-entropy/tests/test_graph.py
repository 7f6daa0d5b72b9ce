"""
Unit tests for the metric graph model.
"""

from fractions import Fraction

import pytest

from conftest import make_graph, theta_graph
from graph_entropy.errors import GraphValidationError, HypothesisError
from graph_entropy.graph import (
    as_length,
    build_graph,
    free_rank,
    normalize,
    relabel,
    require_entropy_hypotheses,
    scale_metric,
    series_reduce,
    validate_entropy_hypotheses,
    volume,
    with_lengths,
)


class TestBuildGraph:
    def test_theta_from_document(self):
        # Given: a theta document with default edge ids
        data = {"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "length": 1}] * 3}

        # When: building the graph
        g = build_graph(data)

        # Then: three links, six oriented edges, valency 3 everywhere
        assert [link.id for link in g.links] == ["e0", "e1", "e2"]
        assert len(g.edge_ids) == 6
        assert g.valency("a") == g.valency("b") == 3

    def test_loop_counts_twice(self, dumbbell):
        # Given: a dumbbell with a loop at each end
        # Then: loop orientations both leave the base vertex
        assert dumbbell.valency("a") == 3
        assert dumbbell.edge("la+").is_loop

    def test_oriented_edges_are_reversals(self, theta):
        # Given: theta
        # Then: id+ runs u -> v and id- is its reversal
        forward, backward = theta.edge("e1+"), theta.edge("e1-")
        assert (forward.origin, forward.terminus) == ("a", "b")
        assert backward.reversal == "e1+"
        assert theta.length("e1-") == theta.length("e1+") == 1

    def test_rational_lengths_are_exact(self):
        # Given: lengths written as "p/q"
        g = build_graph({"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "length": "1/3"}] * 3})

        # Then: volume is exactly one
        assert volume(g) == Fraction(1)

    @pytest.mark.parametrize("length", [0, -1, "0/5"])
    def test_non_positive_length_rejected(self, length):
        # Given: a bad length
        data = {"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "length": length}]}

        # When / Then: validation error
        with pytest.raises(GraphValidationError, match="non-positive length"):
            build_graph(data)

    def test_missing_length_rejected(self):
        with pytest.raises(GraphValidationError, match="missing length"):
            build_graph({"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b"}]})

    def test_dangling_endpoint_rejected(self):
        with pytest.raises(GraphValidationError, match="dangling endpoint"):
            build_graph({"vertices": ["a"], "edges": [{"u": "a", "v": "z", "length": 1}]})

    def test_disconnected_graph_reports_components(self):
        # Given: two separate loops
        data = {
            "vertices": ["a", "b"],
            "edges": [{"u": "a", "v": "a", "length": 1}, {"u": "b", "v": "b", "length": 1}],
        }

        # When: building
        with pytest.raises(GraphValidationError) as excinfo:
            build_graph(data)

        # Then: the witness lists both components
        assert excinfo.value.witness == [["a"], ["b"]]

    def test_single_isolated_vertex_rejected(self):
        with pytest.raises(GraphValidationError, match="valency 0"):
            build_graph({"vertices": ["a"], "edges": []})

    def test_edge_id_with_orientation_suffix_rejected(self):
        with pytest.raises(GraphValidationError):
            build_graph({"vertices": ["a", "b"], "edges": [{"id": "x+", "u": "a", "v": "b", "length": 1}]})

    def test_as_length_rejects_bool_and_nan(self):
        with pytest.raises(GraphValidationError):
            as_length(True)
        with pytest.raises(GraphValidationError):
            as_length(float("nan"))


class TestVolumeAndScaling:
    def test_volume_is_sum_over_links(self):
        # Given: theta with lengths 1, 1, 2
        g = theta_graph(1, 1, 2)

        # Then: volume is 4
        assert volume(g) == 4

    def test_scale_metric(self, theta):
        assert volume(scale_metric(theta, Fraction(1, 3))) == 1

    def test_scale_metric_rejects_non_positive(self, theta):
        with pytest.raises(GraphValidationError):
            scale_metric(theta, 0)

    def test_normalize(self):
        # Given: any positive lengths
        g = normalize(theta_graph(1, 2, 3))

        # Then: unit volume, proportions kept
        assert volume(g) == 1
        assert g.lengths["e3"] == Fraction(1, 2)

    def test_with_lengths_rejects_unknown_edges(self, theta):
        with pytest.raises(GraphValidationError, match="unknown edges"):
            with_lengths(theta, {"zz": 1})

    def test_free_rank(self, theta, k4, k5, dumbbell):
        assert free_rank(theta) == 2
        assert free_rank(dumbbell) == 2
        assert free_rank(k4) == 3
        assert free_rank(k5) == 6

    def test_relabel_keeps_structure(self, theta):
        # Given: theta with vertices renamed
        g = relabel(theta, {"a": "p", "b": "q"}, {"e1": "x"})

        # Then: same shape under new names
        assert g.vertices == ("p", "q")
        assert g.link("x").u == "p"


class TestHypotheses:
    def test_theta_passes(self, theta):
        assert validate_entropy_hypotheses(theta).ok

    def test_cycle_fails_not_cycle(self, cycle4):
        # Given: a 4-cycle
        report = validate_entropy_hypotheses(cycle4)

        # Then: only the cycle check fails
        assert not report.ok
        assert report.check("not_cycle").witness == "graph is a cycle"
        assert report.check("no_terminal_vertex").passed

    def test_path_has_terminal_vertices(self, path):
        report = validate_entropy_hypotheses(path)
        assert report.check("no_terminal_vertex").witness == ["a", "c"]

    def test_require_raises_with_report(self, path):
        with pytest.raises(HypothesisError) as excinfo:
            require_entropy_hypotheses(path)
        assert excinfo.value.report.failures


class TestSeriesReduce:
    def test_identity_when_not_subdivided(self, theta):
        reduction = series_reduce(theta)
        assert reduction.is_identity
        assert reduction.graph == theta

    def test_subdivided_theta_recovers_theta(self, subdivided_theta):
        # Given: theta with a midpoint on e1
        # When: reducing
        reduction = series_reduce(subdivided_theta)

        # Then: the chain becomes one edge of the summed length
        assert reduction.graph.vertices == ("a", "b")
        assert reduction.graph.lengths["e1~e1b"] == 1
        assert reduction.chains["e1~e1b"] == ("e1+", "e1b+")
        assert volume(reduction.graph) == volume(subdivided_theta)

    def test_cycle_is_rejected(self, cycle4):
        with pytest.raises(GraphValidationError, match="cycle"):
            series_reduce(cycle4)

    def test_long_chain_on_dumbbell_bridge(self):
        # Given: a dumbbell whose bridge is split in three
        g = make_graph(
            ["a", "b", "p", "q"],
            [
                ("la", "a", "a", 1),
                ("lb", "b", "b", 1),
                ("s1", "a", "p", 1),
                ("s2", "p", "q", 2),
                ("s3", "q", "b", 3),
            ],
        )

        # When: reducing
        reduction = series_reduce(g)

        # Then: one bridge of length 6
        assert reduction.graph.lengths["s1~s2~s3"] == 6
        assert len(reduction.graph.links) == 3
