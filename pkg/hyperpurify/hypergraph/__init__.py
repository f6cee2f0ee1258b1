from hyperpurify.hypergraph.coloring import (
    Coloring,
    color_classes,
    is_colorable,
    is_k_regular,
    linear_coloring,
    linear_hypergraph,
    parse_coloring,
    validate_protocol_coloring,
)
from hyperpurify.hypergraph.edge_set import Edge, EdgeSet
from hyperpurify.hypergraph.rules import (
    adjacency,
    apply_cnot,
    apply_X,
    apply_Z,
    correction_edges,
    drop_vertex,
    reduce,
    relabel,
    relabel_after_removal,
    z_split,
)
from hyperpurify.hypergraph.text_format import format_hypergraph, parse_hypergraph

__all__ = [
    "Coloring",
    "Edge",
    "EdgeSet",
    "adjacency",
    "color_classes",
    "apply_cnot",
    "apply_X",
    "apply_Z",
    "correction_edges",
    "drop_vertex",
    "format_hypergraph",
    "is_colorable",
    "is_k_regular",
    "linear_coloring",
    "linear_hypergraph",
    "parse_coloring",
    "parse_hypergraph",
    "reduce",
    "relabel",
    "relabel_after_removal",
    "validate_protocol_coloring",
    "z_split",
]
