"""
Input document schemas for graphs, graphs of groups and coverings.
"""

from fractions import Fraction
from typing import Any, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError, field_validator

from graph_entropy.errors import DocumentError

SchemaT = TypeVar("SchemaT", bound=BaseModel)


class EdgeDocument(BaseModel):
    """One unoriented edge; ``length`` is ``"p/q"`` or an integer. A YAML
    decimal such as 0.1 is read as the decimal written, 1/10."""

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    u: str
    v: str
    length: Optional[Fraction] = None
    id: Optional[str] = None

    @field_validator("u", "v", "id", mode="before")
    @classmethod
    def names_as_text(cls, value: Any) -> Any:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return str(value)
        return value

    @field_validator("length", mode="before")
    @classmethod
    def parse_length(cls, value: Any) -> Optional[Fraction]:
        if value is None:
            return None
        if isinstance(value, float):
            value = repr(value)
        from graph_entropy.graph import as_length

        return as_length(value)


class GroupsDocument(BaseModel):
    """Orders of vertex groups and of edge groups (keyed by unoriented edge id)."""

    model_config = ConfigDict(extra="forbid")

    vertex_orders: dict[str, PositiveInt] = Field(default_factory=dict)
    edge_orders: dict[str, PositiveInt] = Field(default_factory=dict)


class GraphDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: list[str]
    edges: list[EdgeDocument]
    groups: Optional[GroupsDocument] = None

    @field_validator("vertices", mode="before")
    @classmethod
    def vertex_names_as_text(cls, value: Any) -> Any:
        if isinstance(value, list):
            return [str(x) if isinstance(x, (int, float)) else x for x in value]
        return value


class CoverDocument(BaseModel):
    """Two graphs of groups and the vertex/edge correspondence between them.

    ``emap`` keys are source edge ids: an unoriented id maps its ``+``
    orientation to the given oriented target edge (and ``-`` to its
    reversal); an oriented id (``f+``/``f-``) maps that orientation only.
    """

    model_config = ConfigDict(extra="forbid")

    source: GraphDocument
    target: GraphDocument
    vmap: dict[str, str]
    emap: dict[str, str]


def _location(error: dict) -> str:
    return ".".join(str(part) for part in error.get("loc", ()))


def parse_document(schema: Type[SchemaT], data: Any) -> SchemaT:
    """Validate ``data`` against ``schema``; failures become DocumentError."""
    if isinstance(data, schema):
        return data
    try:
        return schema.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise DocumentError(first.get("msg", "invalid document"), field=_location(first)) from exc
