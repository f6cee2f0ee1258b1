"""Text form of hypergraphs: ``n; {1,2,3},{3}`` with an optional trailing ``; -1`` sign field."""

import re

from hyperpurify.errors import HypergraphParseError
from hyperpurify.hypergraph.edge_set import EdgeSet

_EDGE_RE = re.compile(r"\{([^{}]*)\}")


def format_hypergraph(edges: EdgeSet) -> str:
    body = ",".join("{" + ",".join(str(v) for v in e) + "}" for e in edges.edges)
    text = f"{edges.n_vertices}; {body}"
    if edges.sign == -1:
        text += "; -1"
    return text


def parse_hypergraph(text: str) -> EdgeSet:
    parts = [p.strip() for p in text.split(";")]
    if len(parts) not in (2, 3):
        raise HypergraphParseError(f"expected 'n; edges[; sign]', got {text!r}")
    try:
        n = int(parts[0])
    except ValueError as e:
        raise HypergraphParseError(f"bad vertex count {parts[0]!r}") from e

    body = parts[1]
    edges: list[tuple[int, ...]] = []
    for match in _EDGE_RE.finditer(body):
        inner = match.group(1).strip()
        try:
            edges.append(tuple(int(tok) for tok in inner.split(",") if tok.strip()))
        except ValueError as e:
            raise HypergraphParseError(f"bad edge {match.group(0)!r}") from e
    leftover = _EDGE_RE.sub("", body).replace(",", "").strip()
    if leftover:
        raise HypergraphParseError(f"unexpected text {leftover!r} in edge list")

    sign = 1
    if len(parts) == 3:
        if parts[2] not in ("1", "+1", "-1"):
            raise HypergraphParseError(f"sign must be +1 or -1, got {parts[2]!r}")
        sign = int(parts[2])

    try:
        return EdgeSet.of(n, edges, sign=sign)
    except ValueError as e:
        raise HypergraphParseError(str(e)) from e
