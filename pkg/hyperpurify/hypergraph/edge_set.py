from __future__ import annotations

from typing import Any, Iterable

from pydantic import Field, field_validator, model_validator

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import InvalidEdgeError, VertexOutOfRangeError

Edge = tuple[int, ...]


def toggle_edges(edges: Iterable[Iterable[int]]) -> tuple[set[Edge], int]:
    """Reduce a multiset of edges mod 2.

    Returns the surviving canonical edges and the sign contributed by empty
    edges (C of the empty edge is the scalar -1).
    """
    survivors: set[Edge] = set()
    sign = 1
    for raw in edges:
        edge = tuple(sorted(set(raw)))
        if not edge:
            sign = -sign
            continue
        if edge in survivors:
            survivors.remove(edge)
        else:
            survivors.add(edge)
    return survivors, sign


def canonical_order(edges: Iterable[Edge]) -> tuple[Edge, ...]:
    return tuple(sorted(edges))


class EdgeSet(FrozenModel):
    """A hypergraph state ``sign * prod_e C_e |+>^n``.

    Edges are stored sorted and deduplicated mod 2; the empty edge never
    appears, it is folded into ``sign``.
    """

    n_vertices: int = Field(gt=0)
    edges: tuple[Edge, ...] = ()
    sign: int = 1

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "edges" not in data:
            return data
        survivors, empty_sign = toggle_edges(data["edges"])
        return {**data, "edges": canonical_order(survivors), "sign": data.get("sign", 1) * empty_sign}

    @field_validator("sign")
    @classmethod
    def _check_sign(cls, value: int) -> int:
        if value not in (1, -1):
            raise InvalidEdgeError(f"sign must be +1 or -1, got {value}")
        return value

    @model_validator(mode="after")
    def _check_range(self) -> "EdgeSet":
        for edge in self.edges:
            for v in edge:
                if not 1 <= v <= self.n_vertices:
                    raise VertexOutOfRangeError(v, self.n_vertices)
        return self

    @classmethod
    def of(cls, n_vertices: int, edges: Iterable[Iterable[int]] = (), sign: int = 1) -> "EdgeSet":
        return cls(n_vertices=n_vertices, edges=[tuple(e) for e in edges], sign=sign)

    def check_vertex(self, vertex: int) -> None:
        if not 1 <= vertex <= self.n_vertices:
            raise VertexOutOfRangeError(vertex, self.n_vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)

    def contains(self, edge: Iterable[int]) -> bool:
        return tuple(sorted(set(edge))) in self.edges

    def __str__(self) -> str:
        from hyperpurify.hypergraph.text_format import format_hypergraph

        return format_hypergraph(self)
