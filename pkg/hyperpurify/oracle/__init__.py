from hyperpurify.oracle.dense_state import (
    DenseState,
    StabilizerOp,
    basis_state,
    build_state,
    dump_matrix_csv,
    hypergraph_basis,
    stabilizer,
    tensor,
    trace_distance,
)
from hyperpurify.oracle.operators import (
    PAULIS,
    Gate,
    Kraus,
    apply_kraus,
    apply_operator,
    apply_unitary,
    measurement_bra,
    pauli_string,
    projector,
    reduction_P,
    reduction_P_perp,
)
from hyperpurify.oracle.subprotocol import BranchSelector, DenseBranch, subprotocol_dense

__all__ = [
    "PAULIS",
    "BranchSelector",
    "DenseBranch",
    "DenseState",
    "Gate",
    "Kraus",
    "StabilizerOp",
    "apply_kraus",
    "apply_operator",
    "apply_unitary",
    "basis_state",
    "build_state",
    "dump_matrix_csv",
    "hypergraph_basis",
    "measurement_bra",
    "pauli_string",
    "projector",
    "reduction_P",
    "reduction_P_perp",
    "stabilizer",
    "subprotocol_dense",
    "tensor",
    "trace_distance",
]
