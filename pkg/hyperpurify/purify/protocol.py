"""Sub-protocols evaluated directly on hypergraph-basis coefficients.

For a measured color with vertex set M and the rest R, the keep branch maps
|H_a>|H_b> to 2^(-|R|/2) [a_M = b_M] |H_(a_M, a_R xor b_R)>; after a reduction
pattern pi and sigma_z readout z on M (with the local Z corrections applied),
a branch maps it to 2^(-n/2) (-1)^((a_M xor b_M).z + a_R.pi) |H_(b_M, a_R xor b_R)>.
Both are XOR-convolutions over the reduced bits and are computed with
Walsh-Hadamard transforms.
"""

from __future__ import annotations

import itertools

import numpy as np
import numpy.typing as npt

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import ImpossibleBranchError, NotNormalizedError
from hyperpurify.hypergraph import Coloring, EdgeSet, correction_edges, validate_protocol_coloring
from hyperpurify.logger import get_logger
from hyperpurify.purify.layout import Layout, layout
from hyperpurify.states import HBState

log = get_logger(__name__)

IMPOSSIBLE_TOL = 1e-14
NORMALIZATION_TOL = 1e-9

Pattern = tuple[int, ...]


class SubprotocolResult(FrozenModel):
    """Outcome of one sub-protocol round on two identical copies.

    ``p_keep`` is conditioned on the all-P reduction pattern;
    ``keep_probability`` and ``discard_probability`` are absolute.
    """

    color: str
    measured: tuple[int, ...]
    reduced: tuple[int, ...]
    kept: HBState | None
    p_reduce_each: dict[Pattern, float]
    p_reduce_vertex: dict[int, float]
    p_keep: float
    keep_probability: float
    discard_probability: float

    @property
    def p_minus(self) -> float:
        return 1.0 - self.p_keep

    @property
    def p_all_p(self) -> float:
        return self.p_reduce_each[(0,) * len(self.reduced)]


class RecycleBranch(FrozenModel):
    pattern: Pattern
    perp_vertices: tuple[int, ...]
    z_bits: tuple[int, ...]
    corrections: tuple[int, ...]
    state: HBState | None
    probability: float

    @property
    def z_outcome(self) -> tuple[int, ...]:
        return tuple(-1 if b else 1 for b in self.z_bits)

    @property
    def impossible(self) -> bool:
        return self.state is None


class BranchTotals(FrozenModel):
    keep: float
    discard: float
    recycle: float

    @property
    def total(self) -> float:
        return self.keep + self.discard + self.recycle


def _prepare(state: HBState, color: str, coloring: Coloring) -> Layout:
    if abs(state.trace - 1.0) > NORMALIZATION_TOL:
        raise NotNormalizedError(f"sub-protocol input has trace {state.trace}")
    measured, reduced = validate_protocol_coloring(state.target, coloring, color)
    return layout(state.n_vertices, measured, reduced)


def _pattern_probabilities(blocks: npt.NDArray[np.complex128], lay: Layout) -> npt.NDArray[np.float64]:
    """P(pi) = 2^-|R| sum_d (-1)^(d.pi) q(d)^2 with q(d) = sum_t Q[t, t xor d]."""
    q_mat = np.einsum("aras->rs", blocks)
    idx = np.arange(lay.r_dim)
    q = np.array([q_mat[idx, idx ^ d].sum().real for d in range(lay.r_dim)])
    return np.asarray(lay.h @ (q * q) / lay.r_dim, dtype=np.float64)


def _keep_matrix(blocks: npt.NDArray[np.complex128], lay: Layout) -> npt.NDArray[np.complex128]:
    hat = lay.wht_inner(blocks)
    return lay.wht_inner(hat * hat) / float(lay.r_dim) ** 3


def _branch_matrix(blocks: npt.NDArray[np.complex128], lay: Layout, pattern: Pattern, z_bits: tuple[int, ...]) -> npt.NDArray[np.complex128]:
    zeta = lay.sign_vector(z_bits, lay.m_dim)
    sigma = lay.sign_vector(pattern, lay.r_dim)
    a = np.einsum("a,arbs,b->rs", zeta, blocks, zeta)
    a_pi = sigma[:, None] * a * sigma[None, :]
    a_hat = lay.h @ a_pi @ lay.h
    b_hat = lay.wht_inner(zeta[:, None, None, None] * blocks * zeta[None, None, :, None])
    return lay.wht_inner(a_hat[None, :, None, :] * b_hat) / (2.0**lay.n * float(lay.r_dim) ** 2)


def _patterns(k: int) -> list[Pattern]:
    return [tuple(p) for p in itertools.product((0, 1), repeat=k)]


def _result(state: HBState, color: str, lay: Layout, blocks: npt.NDArray[np.complex128]) -> SubprotocolResult:
    probs = _pattern_probabilities(blocks, lay)
    patterns = _patterns(len(lay.reduced))
    p_reduce_each = {p: float(probs[i]) for i, p in enumerate(patterns)}
    p_reduce_vertex = {v: float(sum(pr for p, pr in p_reduce_each.items() if p[j] == 0)) for j, v in enumerate(lay.reduced)}

    keep_c = lay.from_blocks(_keep_matrix(blocks, lay))
    keep_abs = max(float(np.trace(keep_c).real), 0.0)
    p_all_p = p_reduce_each[patterns[0]]
    kept = HBState.of(state.target, keep_c / keep_abs) if keep_abs >= IMPOSSIBLE_TOL else None
    return SubprotocolResult(
        color=color,
        measured=lay.measured,
        reduced=lay.reduced,
        kept=kept,
        p_reduce_each=p_reduce_each,
        p_reduce_vertex=p_reduce_vertex,
        p_keep=min(keep_abs / p_all_p, 1.0),
        keep_probability=keep_abs,
        discard_probability=max(p_all_p - keep_abs, 0.0),
    )


def subprotocol_keep(state: HBState, color: str, coloring: Coloring) -> SubprotocolResult:
    """One round of the comparison protocol measuring ``color``; raises if nothing survives."""
    lay = _prepare(state, color, coloring)
    result = _result(state, color, lay, lay.to_blocks(state.c))
    if result.kept is None:
        raise ImpossibleBranchError(f"keep branch of color {color} has probability {result.keep_probability}")
    return result


def minus_one_probability(state: HBState, color: str, coloring: Coloring) -> float:
    lay = _prepare(state, color, coloring)
    return _result(state, color, lay, lay.to_blocks(state.c)).p_minus


def reduction_pattern_probabilities(state: HBState, color: str, coloring: Coloring) -> dict[Pattern, float]:
    """Probability of every P / P-perp pattern over the reduced vertices (0 = P)."""
    lay = _prepare(state, color, coloring)
    probs = _pattern_probabilities(lay.to_blocks(state.c), lay)
    return {p: float(probs[i]) for i, p in enumerate(_patterns(len(lay.reduced)))}


def corrections_for(target: EdgeSet, measured: tuple[int, ...], reduced: tuple[int, ...], pattern: Pattern, z_bits: tuple[int, ...]) -> tuple[int, ...]:
    """Vertices needing a Z after a recycle branch."""
    z_flips = [v for v, b in zip(measured, z_bits) if b]
    perp = [v for v, b in zip(reduced, pattern) if b]
    fixes, _ = correction_edges(target, measured, z_flips, perp)
    return fixes


def subprotocol_recycle(state: HBState, color: str, coloring: Coloring) -> tuple[SubprotocolResult, list[RecycleBranch]]:
    """Keep branch plus every P-perp branch, corrected back into the hypergraph basis.

    The keep branch may be impossible here (``kept`` is None); recycling still
    has outputs to offer.
    """
    lay = _prepare(state, color, coloring)
    blocks = lay.to_blocks(state.c)
    result = _result(state, color, lay, blocks)

    branches: list[RecycleBranch] = []
    for pattern in _patterns(len(lay.reduced))[1:]:
        for z_bits in _patterns(len(lay.measured)):
            fixes = corrections_for(state.target, lay.measured, lay.reduced, pattern, z_bits)
            c = lay.from_blocks(_branch_matrix(blocks, lay, pattern, z_bits))
            prob = max(float(np.trace(c).real), 0.0)
            branch_state = HBState.of(state.target, c / prob) if prob >= IMPOSSIBLE_TOL else None
            if branch_state is None:
                log.debug("Recycle branch %s z=%s of color %s is impossible", pattern, z_bits, color)
            branches.append(
                RecycleBranch(
                    pattern=pattern,
                    perp_vertices=tuple(v for v, b in zip(lay.reduced, pattern) if b),
                    z_bits=z_bits,
                    corrections=fixes,
                    state=branch_state,
                    probability=prob,
                )
            )
    return result, branches


def branch_totals(state: HBState, color: str, coloring: Coloring) -> BranchTotals:
    """Absolute keep, discard and recycle probabilities of one round; they sum to one."""
    result = subprotocol_keep_or_none(state, color, coloring)
    recycle = sum(p for pattern, p in result.p_reduce_each.items() if any(pattern))
    return BranchTotals(keep=result.keep_probability, discard=result.discard_probability, recycle=recycle)


def subprotocol_keep_or_none(state: HBState, color: str, coloring: Coloring) -> SubprotocolResult:
    """Like ``subprotocol_keep`` but reports an impossible keep branch as ``kept=None``."""
    lay = _prepare(state, color, coloring)
    return _result(state, color, lay, lay.to_blocks(state.c))
