from __future__ import annotations

from typing import Any

from pydantic import model_validator

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import InvalidColoringError
from hyperpurify.hypergraph.edge_set import EdgeSet


class Coloring(FrozenModel):
    """Party colors, ``colors[i]`` belongs to vertex ``i + 1``."""

    colors: tuple[str, ...]

    @model_validator(mode="before")
    @classmethod
    def _from_string(cls, data: Any) -> Any:
        if isinstance(data, dict) and isinstance(data.get("colors"), str):
            return {**data, "colors": tuple(data["colors"])}
        return data

    @model_validator(mode="after")
    def _check_labels(self) -> "Coloring":
        if not self.colors:
            raise InvalidColoringError("coloring must cover at least one vertex")
        for c in self.colors:
            if len(c) != 1 or not c.isalpha():
                raise InvalidColoringError(f"color labels are single letters, got {c!r}")
        return self

    @classmethod
    def parse(cls, text: str) -> "Coloring":
        return cls(colors=tuple(text.strip().upper()))

    @property
    def n_vertices(self) -> int:
        return len(self.colors)

    @property
    def palette(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.colors)))

    def color_of(self, vertex: int) -> str:
        return self.colors[vertex - 1]

    def color_class(self, color: str) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colors, start=1) if c == color)

    def __str__(self) -> str:
        return "".join(self.colors)


def is_k_regular(edges: EdgeSet, k: int = 3) -> bool:
    return all(len(e) == k for e in edges.edges)


def is_colorable(edges: EdgeSet, coloring: Coloring) -> bool:
    """True when no edge holds two vertices of the same color."""
    if coloring.n_vertices != edges.n_vertices:
        return False
    for edge in edges.edges:
        seen = [coloring.color_of(v) for v in edge]
        if len(seen) != len(set(seen)):
            return False
    return True


def validate_protocol_coloring(edges: EdgeSet, coloring: Coloring, color: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split the vertices into the measured class and the reduced rest.

    The two-copy map is exact only if every edge meets the measured color
    exactly once; anything else raises ``InvalidColoringError``.
    """
    if not is_colorable(edges, coloring):
        raise InvalidColoringError(f"coloring {coloring} is not a proper coloring of {edges}")
    measured = coloring.color_class(color)
    if not measured:
        raise InvalidColoringError(f"no vertex carries color {color!r}")
    for edge in edges.edges:
        hits = sum(1 for v in edge if coloring.color_of(v) == color)
        if hits != 1:
            raise InvalidColoringError(f"edge {edge} meets color {color!r} {hits} times")
    rest = tuple(v for v in range(1, edges.n_vertices + 1) if coloring.color_of(v) != color)
    return measured, rest


def linear_hypergraph(n: int) -> EdgeSet:
    """Linear 3-regular hypergraph on ``n >= 3`` vertices: edges {i, i+1, i+2}."""
    if n < 3:
        raise InvalidColoringError("linear 3-regular hypergraphs need at least 3 vertices")
    return EdgeSet.of(n, [(i, i + 1, i + 2) for i in range(1, n - 1)])


def linear_coloring(n: int, palette: str = "ABC") -> Coloring:
    return Coloring(colors=tuple(palette[(v - 1) % len(palette)] for v in range(1, n + 1)))


def parse_coloring(text: str) -> Coloring:
    """``"ABCA"`` colors vertices 1..4."""
    return Coloring.parse(text)


def color_classes(coloring: Coloring) -> dict[str, tuple[int, ...]]:
    return {c: coloring.color_class(c) for c in coloring.palette}
