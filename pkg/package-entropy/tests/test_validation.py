"""
Unit tests for document parsing and canonical serialization.
"""

from fractions import Fraction

import pytest

from conftest import make_graph
from graph_entropy.errors import DocumentError
from graph_entropy.gog import GraphOfGroups
from graph_entropy.graph import build_graph
from graph_entropy.oracle import count_paths, integer_grid
from graph_entropy.processing.serialization import dump_graph, format_length, load_graph, load_yaml
from graph_entropy.processing.validation import CoverDocument, GraphDocument, parse_document

THETA_YAML = """
vertices: [a, b]
edges:
  - {id: e1, u: a, v: b, length: 1/3}
  - {id: e2, u: a, v: b, length: "1/3"}
  - {id: e3, u: a, v: b, length: 1/3}
"""

DECIMAL_THETA_YAML = """
vertices: [a, b]
edges:
  - {id: e1, u: a, v: b, length: 0.1}
  - {id: e2, u: a, v: b, length: 0.2}
  - {id: e3, u: a, v: b, length: 0.25}
"""


class TestGraphDocument:
    def test_yaml_fractions_are_exact(self):
        # Given: lengths written as p/q, quoted and unquoted
        document = parse_document(GraphDocument, load_yaml(THETA_YAML))

        # Then: all three are the exact rational 1/3
        assert [edge.length for edge in document.edges] == [Fraction(1, 3)] * 3

    def test_yaml_decimals_are_read_as_written(self):
        # Given: decimal lengths, which YAML loads as floats
        g = build_graph(load_yaml(DECIMAL_THETA_YAML))

        # Then: the lengths are the written decimals and the exact oracle accepts them
        assert [g.length(e) for e in ("e1+", "e2+", "e3+")] == [Fraction(1, 10), Fraction(1, 5), Fraction(1, 4)]
        assert integer_grid(g).scale == 20
        assert count_paths(g, "a", 1).count > 0

    def test_non_finite_decimal_rejected(self):
        edges = [{"u": "a", "v": "a", "length": float("inf")}]
        with pytest.raises(DocumentError):
            parse_document(GraphDocument, {"vertices": ["a"], "edges": edges})

    def test_numeric_names_become_text(self):
        document = parse_document(
            GraphDocument, {"vertices": [1, 2], "edges": [{"u": 1, "v": 2, "id": 7, "length": 1}]}
        )
        assert document.vertices == ["1", "2"]
        assert (document.edges[0].u, document.edges[0].id) == ("1", "7")

    def test_missing_field_is_named(self):
        with pytest.raises(DocumentError) as exc_info:
            parse_document(GraphDocument, {"edges": []})
        assert exc_info.value.field == "vertices"

    def test_bad_length_is_located(self):
        # Given: an unparseable length on the second edge
        edges = [{"u": "a", "v": "a", "length": 1}, {"u": "a", "v": "a", "length": "x"}]
        data = {"vertices": ["a"], "edges": edges}

        # Then: the error points at edges.1.length
        with pytest.raises(DocumentError) as exc_info:
            parse_document(GraphDocument, data)
        assert exc_info.value.field == "edges.1.length"
        assert "edges.1.length" in str(exc_info.value)

    def test_unknown_keys_rejected(self):
        with pytest.raises(DocumentError, match="colour"):
            parse_document(GraphDocument, {"vertices": ["a"], "edges": [], "colour": "red"})

    def test_non_positive_group_order_rejected(self):
        data = {"vertices": ["a"], "edges": [], "groups": {"vertex_orders": {"a": 0}}}
        with pytest.raises(DocumentError) as exc_info:
            parse_document(GraphDocument, data)
        assert exc_info.value.field.startswith("groups.vertex_orders")

    def test_parsed_document_passes_through(self):
        document = parse_document(GraphDocument, load_yaml(THETA_YAML))
        assert parse_document(GraphDocument, document) is document


class TestCoverDocument:
    def test_parses_both_graphs(self, theta_double_cover):
        document = parse_document(CoverDocument, theta_double_cover)
        assert len(document.source.edges) == 6
        assert document.emap["f1"] == "e1"

    def test_missing_vmap_rejected(self, theta_double_cover):
        data = dict(theta_double_cover)
        del data["vmap"]
        with pytest.raises(DocumentError) as exc_info:
            parse_document(CoverDocument, data)
        assert exc_info.value.field == "vmap"


class TestYaml:
    def test_syntax_error_reports_line(self):
        # Given: an unclosed flow sequence on line 2
        text = "vertices: [a, b]\nedges: [{u: a, v: b\n"

        # Then: a DocumentError carrying a line number
        with pytest.raises(DocumentError) as exc_info:
            load_yaml(text)
        assert exc_info.value.line is not None
        assert "line" in str(exc_info.value)

    @pytest.mark.parametrize(
        "value, text", [(Fraction(3), "3"), (Fraction(1, 3), "1/3"), (Fraction(7, 2), "7/2")]
    )
    def test_format_length(self, value, text):
        assert format_length(value) == text


class TestDumpGraph:
    def test_reload_gives_the_same_graph(self):
        g = make_graph("abc", [("x", "a", "b", Fraction(1, 3)), ("y", "b", "c", 2), ("z", "c", "a", 1)])
        assert build_graph(load_yaml(dump_graph(g))) == g

    def test_output_is_canonical(self):
        # Given: the same graph described in two orders
        first = make_graph("ab", [("e1", "a", "b", 1), ("e2", "a", "b", 2), ("e3", "a", "b", 3)])
        second = make_graph("ba", [("e3", "a", "b", 3), ("e1", "a", "b", 1), ("e2", "a", "b", 2)])

        # Then: byte-identical output
        assert dump_graph(first) == dump_graph(second)

    def test_groups_are_written(self, theta):
        text = dump_graph(theta, GraphOfGroups(theta, {"a": 2}))
        document = load_yaml(text)
        assert document["groups"]["vertex_orders"] == {"a": 2, "b": 1}

    def test_load_graph_from_file(self, tmp_path, theta):
        path = tmp_path / "theta.yml"
        path.write_text(dump_graph(theta))
        assert load_graph(str(path)) == theta
