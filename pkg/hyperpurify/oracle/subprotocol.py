"""Two-copy sub-protocol simulated gate by gate on 2n qubits.

Copy one holds qubits 1..n, copy two holds n+1..2n. Measured-color vertices
get CNOT(v, n+v) and a destructive measurement of the copy-one qubit; every
other vertex pair is merged into the copy-two qubit by P or P-perp.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import Field

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import DimensionMismatchError
from hyperpurify.hypergraph import Coloring, EdgeSet, correction_edges, validate_protocol_coloring
from hyperpurify.logger import get_logger
from hyperpurify.oracle.dense_state import DenseState
from hyperpurify.oracle.operators import (
    Gate,
    Kraus,
    apply_kraus,
    apply_unitary,
    measurement_bra,
    reduction_P,
    reduction_P_perp,
)

log = get_logger(__name__)

IMPOSSIBLE_TOL = 1e-14


class BranchSelector(FrozenModel):
    """Which outcome of the sub-protocol to post-select.

    ``pattern`` has one bit per reduced vertex (0 = P, 1 = P-perp), ``outcomes``
    one bit per measured vertex: for the x basis 0 is "+1", for the z basis it
    is the bit read out. ``corrections`` are Z gates applied to the output.
    """

    pattern: tuple[int, ...]
    basis: Literal["x", "z"] = "x"
    outcomes: tuple[int, ...]
    corrections: tuple[int, ...] = ()

    @classmethod
    def keep(cls, n_reduced: int, n_measured: int) -> "BranchSelector":
        return cls(pattern=(0,) * n_reduced, basis="x", outcomes=(0,) * n_measured)

    @classmethod
    def recycle(
        cls,
        target: EdgeSet,
        measured: tuple[int, ...],
        reduced: tuple[int, ...],
        pattern: tuple[int, ...],
        z_bits: tuple[int, ...],
    ) -> "BranchSelector":
        """P-perp branch with the local Z corrections that undo the decoration."""
        z_flips = [v for v, bit in zip(measured, z_bits) if bit]
        perp = [v for v, bit in zip(reduced, pattern) if bit]
        fixes, _phase = correction_edges(target, measured, z_flips, perp)
        return cls(pattern=pattern, basis="z", outcomes=z_bits, corrections=fixes)


class DenseBranch(FrozenModel):
    state: DenseState
    probability: float = Field(ge=0.0)

    @property
    def impossible(self) -> bool:
        return self.probability < IMPOSSIBLE_TOL


def subprotocol_dense(
    rho_pair: DenseState,
    measured_color: str,
    coloring: Coloring,
    target: EdgeSet,
    selector: BranchSelector,
) -> DenseBranch:
    """Post-selected n-qubit state of one branch and the probability of that branch."""
    n = target.n_vertices
    if rho_pair.n_qubits != 2 * n:
        raise DimensionMismatchError(f"pair state has {rho_pair.n_qubits} qubits, expected {2 * n}")
    measured, reduced = validate_protocol_coloring(target, coloring, measured_color)
    if len(selector.pattern) != len(reduced) or len(selector.outcomes) != len(measured):
        raise DimensionMismatchError(f"selector {selector} does not fit {len(measured)} measured and {len(reduced)} reduced vertices")

    state = rho_pair.as_density()
    for v in measured:
        state = apply_unitary(state, Gate(kind="CNOT", targets=(v, n + v)))

    labels = [(1, v) for v in range(1, n + 1)] + [(2, v) for v in range(1, n + 1)]

    def position(copy: int, v: int) -> int:
        return labels.index((copy, v)) + 1

    steps: list[tuple[int, Kraus]] = []
    for v, bit in zip(reduced, selector.pattern):
        make = reduction_P_perp if bit else reduction_P
        steps.append((v, make(position(1, v), position(2, v))))
        labels.remove((1, v))
    for v, bit in zip(measured, selector.outcomes):
        outcome: Literal["+", "-", "0", "1"]
        if selector.basis == "x":
            outcome = "-" if bit else "+"
        else:
            outcome = "1" if bit else "0"
        steps.append((v, measurement_bra(position(1, v), outcome)))
        labels.remove((1, v))

    for _, kraus in steps:
        state, _ = apply_kraus(state, kraus)
    for v in selector.corrections:
        state = apply_unitary(state, Gate(kind="Z", targets=(v,)))

    probability = max(state.trace, 0.0)
    if probability < IMPOSSIBLE_TOL:
        log.debug("Impossible branch %s", selector)
        return DenseBranch(state=DenseState(n_qubits=n, data=np.zeros((2**n, 2**n), dtype=np.complex128)), probability=probability)
    return DenseBranch(state=state.normalized(), probability=probability)
