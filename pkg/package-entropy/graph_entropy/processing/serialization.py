"""
YAML reading and canonical writing of graph documents.
"""

from fractions import Fraction
from typing import Any

import yaml

from graph_entropy.errors import DocumentError


def format_length(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def load_yaml(text: str) -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise DocumentError(f"unreadable document: {getattr(exc, 'problem', exc)}", line=line) from exc


def load_file(path: str) -> Any:
    with open(path) as f:
        return load_yaml(f.read())


def graph_to_document(g, groups=None) -> dict:
    """Plain mapping for ``g`` (a MetricGraph) with lengths as ``"p/q"``."""
    document: dict[str, Any] = {
        "vertices": list(g.vertices),
        "edges": [
            {"id": link.id, "u": link.u, "v": link.v, "length": format_length(link.length)}
            for link in g.links
        ],
    }
    if groups is not None:
        document["groups"] = {
            "vertex_orders": dict(sorted(groups.vertex_order.items())),
            "edge_orders": dict(sorted(groups.edge_order.items())),
        }
    return document


def dump_graph(g, groups=None) -> str:
    """Canonical YAML: identical graphs always produce identical bytes."""
    return yaml.safe_dump(
        graph_to_document(g, groups),
        sort_keys=True,
        default_flow_style=False,
        allow_unicode=True,
    )


def load_graph(path: str):
    """Read and build a MetricGraph from a YAML graph document."""
    from graph_entropy.graph import build_graph

    return build_graph(load_file(path))
