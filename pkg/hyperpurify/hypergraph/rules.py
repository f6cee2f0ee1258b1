"""Graphical rewrite rules: every gate or measurement the protocols use, acting on edge sets."""

from typing import Iterable

from hyperpurify.errors import InvalidEdgeError, NonLocalCorrectionError
from hyperpurify.hypergraph.edge_set import Edge, EdgeSet, canonical_order, toggle_edges


def _rebuild(n: int, edges: Iterable[Iterable[int]], sign: int) -> EdgeSet:
    survivors, empty_sign = toggle_edges(edges)
    return EdgeSet(n_vertices=n, edges=canonical_order(survivors), sign=sign * empty_sign)


def adjacency(edges: EdgeSet, vertex: int) -> frozenset[Edge]:
    """Edges containing ``vertex`` with the vertex removed; may hold the empty edge."""
    edges.check_vertex(vertex)
    return frozenset(tuple(w for w in e if w != vertex) for e in edges.edges if vertex in e)


def apply_Z(edges: EdgeSet, vertex: int) -> EdgeSet:
    edges.check_vertex(vertex)
    return _rebuild(edges.n_vertices, [*edges.edges, (vertex,)], edges.sign)


def apply_X(edges: EdgeSet, vertex: int) -> EdgeSet:
    """X_v toggles the adjacency of v; an empty adjacency edge flips the sign."""
    return _rebuild(edges.n_vertices, [*edges.edges, *adjacency(edges, vertex)], edges.sign)


def apply_cnot(edges: EdgeSet, control: int, target: int) -> EdgeSet:
    """E' = E symmetric-difference { f + {c} | f in A(t) }."""
    edges.check_vertex(control)
    if control == target:
        raise InvalidEdgeError(f"CNOT needs distinct control and target, got {control}")
    added = [(*f, control) for f in adjacency(edges, target)]
    return _rebuild(edges.n_vertices, [*edges.edges, *added], edges.sign)


def relabel_after_removal(vertex: int, removed: int) -> int:
    return vertex - 1 if vertex > removed else vertex


def reduce(edges: EdgeSet, v1: int, v2: int) -> EdgeSet:
    """Reduction P_{v1,v2}: merge ``v1`` into ``v2`` and drop ``v1``.

    Labels above ``v1`` shift down by one, so ``v2`` keeps its label only if
    it is below ``v1``.
    """
    edges.check_vertex(v1)
    edges.check_vertex(v2)
    if v1 == v2:
        raise InvalidEdgeError(f"reduction needs two distinct vertices, got {v1}")
    kept = [e for e in edges.edges if v1 not in e]
    merged = [(*f, v2) for f in adjacency(edges, v1)]
    survivors, empty_sign = toggle_edges([*kept, *merged])
    relabeled = [tuple(relabel_after_removal(w, v1) for w in e) for e in survivors]
    return _rebuild(edges.n_vertices - 1, relabeled, edges.sign * empty_sign)


def z_split(edges: EdgeSet, vertex: int) -> tuple[EdgeSet, EdgeSet]:
    """Branches of a sigma_z measurement on ``vertex``: outcomes |0> and |1>.

    Both branches live on V minus ``vertex`` but keep the original labels:
    they are returned with the same ``n_vertices`` and ``vertex`` isolated.
    Unlike ``reduce``, nothing is relabeled here; pass a branch through
    ``drop_vertex`` to get the (n - 1)-vertex edge set. The |1> branch toggles
    the adjacency mod 2 (C_e squares to one), with an empty adjacency edge
    flipping the sign.
    """
    kept = [e for e in edges.edges if vertex not in e]
    branch0 = _rebuild(edges.n_vertices, kept, edges.sign)
    branch1 = _rebuild(edges.n_vertices, [*kept, *adjacency(edges, vertex)], edges.sign)
    return branch0, branch1


def drop_vertex(edges: EdgeSet, vertex: int) -> EdgeSet:
    """Remove an isolated vertex and shift higher labels down."""
    edges.check_vertex(vertex)
    if any(vertex in e for e in edges.edges):
        raise InvalidEdgeError(f"vertex {vertex} is not isolated")
    if edges.n_vertices == 1:
        raise InvalidEdgeError("cannot drop the last vertex of a hypergraph")
    relabeled = [tuple(relabel_after_removal(w, vertex) for w in e) for e in edges.edges]
    return _rebuild(edges.n_vertices - 1, relabeled, edges.sign)


def correction_edges(edges: EdgeSet, measured: Iterable[int], z_flips: Iterable[int], perp: Iterable[int]) -> tuple[tuple[int, ...], int]:
    """Decoration left on the second copy after a P-perp recycle branch.

    ``measured`` are the sigma_z-measured vertices whose outcome was -1
    (``z_flips``); ``perp`` the reduced vertices that saw P-perp. For every
    edge through a flipped vertex, the phase prod(y + pi) - prod(y) over the
    other vertices expands into sub-edges; single vertices are undone with Z,
    the empty term is a global phase. Returns (Z vertices, phase sign).
    Multi-vertex terms would need a non-local gate and raise.
    """
    flipped = set(z_flips) & set(measured)
    perp_set = set(perp)
    terms: list[Edge] = []
    for edge in edges.edges:
        hub = [v for v in edge if v in flipped]
        if not hub:
            continue
        others = [v for v in edge if v not in hub]
        # subsets T of `others` strictly smaller than `others` whose complement is all P-perp
        fixed = [v for v in others if v not in perp_set]
        free = [v for v in others if v in perp_set]
        for mask in range(1 << len(free)):
            chosen = [free[i] for i in range(len(free)) if mask >> i & 1]
            term = tuple(sorted([*fixed, *chosen]))
            if len(term) == len(others):
                continue
            terms.append(term)
    survivors, phase = toggle_edges(terms)
    nonlocal_terms = [t for t in survivors if len(t) > 1]
    if nonlocal_terms:
        raise NonLocalCorrectionError(f"decoration {sorted(nonlocal_terms)} cannot be removed by local Z corrections")
    return tuple(sorted(t[0] for t in survivors)), phase


def relabel(edges: EdgeSet, mapping: dict[int, int]) -> EdgeSet:
    """Rename vertices by a permutation of 1..n; unmapped vertices keep their label."""
    n = edges.n_vertices
    full = {v: mapping.get(v, v) for v in range(1, n + 1)}
    if sorted(full.values()) != list(range(1, n + 1)):
        raise InvalidEdgeError(f"mapping {mapping} is not a permutation of 1..{n}")
    return _rebuild(n, [tuple(full[v] for v in e) for e in edges.edges], edges.sign)
