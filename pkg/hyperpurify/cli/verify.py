"""Cross-checks of the rewrite rules and the protocol maps against the dense simulator."""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from hyperpurify.base_model import FrozenModel
from hyperpurify.hypergraph import Coloring, EdgeSet, apply_cnot, apply_X, apply_Z, drop_vertex, reduce, z_split
from hyperpurify.logger import get_logger
from hyperpurify.oracle import (
    BranchSelector,
    DenseState,
    Gate,
    apply_kraus,
    apply_unitary,
    build_state,
    measurement_bra,
    reduction_P,
    subprotocol_dense,
    tensor,
)
from hyperpurify.purify import subprotocol_keep_or_none, subprotocol_recycle
from hyperpurify.states import HBState, from_hbasis, random_state, to_hbasis

log = get_logger(__name__)

REWRITE_TOL = 1e-10
PROTOCOL_TOL = 1e-9

EXHAUSTIVE_N = 4
RANDOM_CASES = 500
PROTOCOL_CASES = 200


class VerifyReport(FrozenModel):
    rewrite_cases: int
    rewrite_mismatches: int
    protocol_cases: int
    protocol_mismatches: int
    probability_defect: float

    @property
    def ok(self) -> bool:
        return self.rewrite_mismatches == 0 and self.protocol_mismatches == 0

    def summary(self) -> str:
        return (
            f"rewrite/oracle mismatches: {self.rewrite_mismatches} of {self.rewrite_cases}\n"
            f"protocol/oracle mismatches: {self.protocol_mismatches} of {self.protocol_cases}\n"
            f"largest branch-probability defect: {self.probability_defect:.3e}"
        )


def all_edge_sets(n: int) -> Iterator[EdgeSet]:
    """Every hypergraph on n vertices (nonempty edges, sign +1)."""
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(range(1, n + 1), k)]
    for mask in range(1 << len(subsets)):
        yield EdgeSet.of(n, [subsets[i] for i in range(len(subsets)) if mask >> i & 1])


def random_edge_set(n: int, rng: np.random.Generator) -> EdgeSet:
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(range(1, n + 1), k)]
    picks = rng.random(len(subsets)) < 0.3
    return EdgeSet.of(n, [s for s, keep in zip(subsets, picks) if keep])


def _close(a: DenseState, b: DenseState, tol: float = REWRITE_TOL) -> bool:
    return bool(np.allclose(a.data, b.data, atol=tol, rtol=0.0))


def rewrite_mismatches(edges: EdgeSet) -> int:
    """Number of rules that disagree with the matrix computation on this hypergraph."""
    n = edges.n_vertices
    psi = build_state(edges)
    bad = 0
    for v in range(1, n + 1):
        bad += not _close(build_state(apply_Z(edges, v)), apply_unitary(psi, Gate(kind="Z", targets=(v,))))
        bad += not _close(build_state(apply_X(edges, v)), apply_unitary(psi, Gate(kind="X", targets=(v,))))
        if n < 2:
            continue
        e0, e1 = z_split(edges, v)
        for outcome, branch in (("0", e0), ("1", e1)):
            projected, prob = apply_kraus(psi, measurement_bra(v, outcome))  # type: ignore[arg-type]
            bad += not _close(build_state(drop_vertex(branch, v)), DenseState(n_qubits=n - 1, data=projected.data / np.sqrt(prob)))
    for c, t in itertools.permutations(range(1, n + 1), 2):
        bad += not _close(build_state(apply_cnot(edges, c, t)), apply_unitary(psi, Gate(kind="CNOT", targets=(c, t))))
        reduced, prob = apply_kraus(psi, reduction_P(c, t))
        if prob > 0:
            bad += not _close(build_state(reduce(edges, c, t)), DenseState(n_qubits=n - 1, data=reduced.data / np.sqrt(prob)))
    return bad


def protocol_mismatches(state: HBState, coloring: Coloring) -> tuple[int, int, float]:
    """(cases, mismatches, largest |1 - total probability|) over all colors and branches."""
    rho = from_hbasis(state)
    pair = tensor(rho, rho)
    target = state.target
    cases = bad = 0
    defect = 0.0
    for color in coloring.palette:
        result, branches = subprotocol_recycle(state, color, coloring)
        keep = subprotocol_dense(pair, color, coloring, target, BranchSelector.keep(len(result.reduced), len(result.measured)))
        cases += 1
        fast_keep = subprotocol_keep_or_none(state, color, coloring)
        ok = abs(keep.probability - fast_keep.keep_probability) < PROTOCOL_TOL
        if fast_keep.kept is not None and not keep.impossible:
            ok = ok and bool(np.allclose(to_hbasis(keep.state, target).c, fast_keep.kept.c, atol=PROTOCOL_TOL))
        bad += not ok
        total = result.keep_probability + result.discard_probability
        for branch in branches:
            selector = BranchSelector.recycle(target, result.measured, result.reduced, branch.pattern, branch.z_bits)
            dense = subprotocol_dense(pair, color, coloring, target, selector)
            cases += 1
            ok = abs(dense.probability - branch.probability) < PROTOCOL_TOL
            if branch.state is not None and not dense.impossible:
                ok = ok and bool(np.allclose(to_hbasis(dense.state, target).c, branch.state.c, atol=PROTOCOL_TOL))
            bad += not ok
            total += branch.probability
        defect = max(defect, abs(1.0 - total))
    return cases, bad, defect


def run_verification(
    seed: int = 0,
    exhaustive_n: int = EXHAUSTIVE_N,
    random_cases: int = RANDOM_CASES,
    protocol_cases: int = PROTOCOL_CASES,
) -> VerifyReport:
    """Every hypergraph up to ``exhaustive_n`` vertices, random ones on 5 or 6, random 3-qubit protocol inputs."""
    rng = np.random.default_rng(seed)
    rewrite_cases = rewrite_bad = 0
    for n in range(1, exhaustive_n + 1):
        for edges in all_edge_sets(n):
            rewrite_cases += 1
            rewrite_bad += rewrite_mismatches(edges)
    for _ in range(random_cases):
        edges = random_edge_set(int(rng.integers(5, 7)), rng)
        rewrite_cases += 1
        rewrite_bad += rewrite_mismatches(edges)

    target = EdgeSet.of(3, [(1, 2, 3)])
    coloring = Coloring.parse("ABC")
    p_cases = p_bad = 0
    worst = 0.0
    for _ in range(protocol_cases):
        c, b, d = protocol_mismatches(random_state(target, rng), coloring)
        p_cases += c
        p_bad += b
        worst = max(worst, d)

    report = VerifyReport(
        rewrite_cases=rewrite_cases,
        rewrite_mismatches=rewrite_bad,
        protocol_cases=p_cases,
        protocol_mismatches=p_bad,
        probability_defect=worst,
    )
    log.info("Verification finished: %d rewrite and %d protocol mismatches", rewrite_bad, p_bad)
    return report
