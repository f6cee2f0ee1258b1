import itertools

import numpy as np
import polars as pl
import pytest

from hyperpurify.cli.verify import all_edge_sets
from hyperpurify.errors import DimensionMismatchError, InvalidEdgeError, ResourceGuardError
from hyperpurify.hypergraph import Coloring, EdgeSet, apply_cnot, apply_X
from hyperpurify.oracle import (
    BranchSelector,
    DenseState,
    Gate,
    apply_kraus,
    apply_unitary,
    basis_state,
    build_state,
    dump_matrix_csv,
    hypergraph_basis,
    measurement_bra,
    pauli_string,
    projector,
    reduction_P,
    reduction_P_perp,
    stabilizer,
    subprotocol_dense,
    tensor,
    trace_distance,
)

TRIANGLE = EdgeSet.of(3, [(1, 2, 3)])


def ket(bits: str) -> DenseState:
    vec = np.zeros(2 ** len(bits))
    vec[int(bits, 2)] = 1.0
    return DenseState.from_vector(vec)


def test_build_state_single_edge():
    psi = build_state(TRIANGLE).data
    expected = np.full(8, 1 / np.sqrt(8))
    expected[0b111] *= -1
    assert np.allclose(psi, expected)


def test_build_state_empty_is_plus_state():
    assert np.allclose(build_state(EdgeSet.of(4)).data, np.full(16, 0.25))


def test_build_state_matches_explicit_gates():
    plus = np.full(4, 0.5, dtype=np.complex128)
    cz = np.diag([1, 1, 1, -1])
    z1z2 = np.kron(np.diag([1, -1]), np.diag([1, -1]))
    expected = z1z2 @ cz @ plus
    assert np.allclose(build_state(EdgeSet.of(2, [(1, 2), (1,), (2,)])).data, expected)


def test_build_state_resource_guard():
    with pytest.raises(ResourceGuardError):
        build_state(EdgeSet.of(20))


def test_basis_state_zero_is_target():
    assert np.allclose(basis_state(TRIANGLE, (0, 0, 0)).data, build_state(TRIANGLE).data)
    with pytest.raises(DimensionMismatchError):
        basis_state(TRIANGLE, (0, 1))


def test_hypergraph_basis_is_orthonormal():
    b = hypergraph_basis(EdgeSet.of(4, [(1, 2, 3), (2, 3, 4)]))
    assert np.allclose(b.T @ b, np.eye(16))


def test_basis_states_are_stabilizer_eigenstates():
    edges = EdgeSet.of(3, [(1, 2, 3), (2,)])
    k = (1, 0, 1)
    h_k = basis_state(edges, k).data
    for v in range(1, 4):
        s = stabilizer(edges, v).matrix
        assert np.allclose(s @ h_k, (-1) ** k[v - 1] * h_k)


def test_empty_hypergraph_stabilizers_are_single_x():
    edges = EdgeSet.of(3, [])
    assert np.allclose(stabilizer(edges, 1).matrix, pauli_string("XII"))
    assert np.allclose(stabilizer(edges, 3).matrix, pauli_string("IIX"))


@pytest.mark.parametrize("n", [1, 2, 3, pytest.param(4, marks=pytest.mark.acceptance)])
def test_every_small_hypergraph_has_a_stabilizer_basis(n):
    dim = 2**n
    index = np.arange(dim)
    for edges in all_edge_sets(n):
        basis = hypergraph_basis(edges)
        assert np.allclose(basis.T @ basis, np.eye(dim))
        assert np.allclose(basis[:, dim - 1], basis_state(edges, (1,) * n).data)
        ops = [stabilizer(edges, v).matrix for v in range(1, n + 1)]
        for v, s in enumerate(ops, start=1):
            eigenvalues = 1 - 2 * ((index >> (n - v)) & 1)
            assert np.allclose(s @ basis, basis * eigenvalues)
            assert np.allclose(s @ s, np.eye(dim))
        for s, t in itertools.combinations(ops, 2):
            assert np.allclose(s @ t, t @ s)


def test_unitaries_match_rewrite_rules():
    psi = build_state(TRIANGLE)
    assert np.allclose(apply_unitary(psi, Gate(kind="X", targets=(3,))).data, build_state(apply_X(TRIANGLE, 3)).data)

    fig2 = EdgeSet.of(6, [(1,), (1, 2, 3), (3,), (4,), (4, 5, 6)])
    out = apply_unitary(build_state(fig2), Gate(kind="CNOT", targets=(1, 4)))
    assert np.allclose(out.data, build_state(apply_cnot(fig2, 1, 4)).data)


def test_identity_on_density():
    rho = build_state(TRIANGLE).as_density()
    twice = apply_unitary(apply_unitary(rho, Gate(kind="Y", targets=(2,))), Gate(kind="Y", targets=(2,)))
    assert np.allclose(twice.data, rho.data)


def test_gate_arity():
    with pytest.raises(ValueError):
        Gate(kind="X", targets=(1, 2))
    with pytest.raises(ValueError):
        Gate(kind="CNOT", targets=(1, 1))


def test_reduction_operators():
    out, prob = apply_kraus(ket("00").as_density(), reduction_P(1, 2))
    assert prob == pytest.approx(1.0)
    assert np.allclose(out.data, [[1, 0], [0, 0]])

    out, prob = apply_kraus(ket("01").as_density(), reduction_P(1, 2))
    assert prob == pytest.approx(0.0)

    out, prob = apply_kraus(ket("01").as_density(), reduction_P_perp(1, 2))
    assert prob == pytest.approx(1.0)
    assert np.allclose(out.data, [[0, 0], [0, 1]])


def test_reduction_output_lands_on_second_target():
    # qubit 1 in |1>, qubits 2,3 in |11>: merging 2 into 3 leaves |1>|1>
    out, prob = apply_kraus(ket("111"), reduction_P(2, 3))
    assert prob == pytest.approx(1.0)
    assert np.allclose(out.data, ket("11").data)


def test_measurement_bra_and_projector():
    plus = DenseState.from_vector(np.array([1, 1]) / np.sqrt(2))
    _, prob = apply_kraus(plus, measurement_bra(1, "+"))
    assert prob == pytest.approx(1.0)
    _, prob = apply_kraus(plus, measurement_bra(1, "0"))
    assert prob == pytest.approx(0.5)
    kept, prob = apply_kraus(plus.as_density(), projector(1, "x", -1))
    assert prob == pytest.approx(0.0)
    assert kept.n_qubits == 1


def test_apply_operator_rejects_repeated_targets():
    with pytest.raises(InvalidEdgeError):
        apply_kraus(ket("00"), reduction_P(1, 1))


def test_dense_state_validation():
    with pytest.raises(ValueError):
        DenseState(n_qubits=2, data=np.eye(2, dtype=np.complex128))
    with pytest.raises(ValueError):
        DenseState(n_qubits=1, data=np.array([[0.5, 1.0], [0.0, 0.5]], dtype=np.complex128))


def test_tensor_and_trace_distance():
    pair = tensor(ket("0"), ket("1"))
    assert np.allclose(pair.data, ket("01").data)
    assert trace_distance(ket("0"), ket("1")) == pytest.approx(1.0)
    assert trace_distance(ket("0"), ket("0").as_density()) == pytest.approx(0.0)


def test_dump_matrix_csv(tmp_path):
    path = tmp_path / "rho.csv"
    dump_matrix_csv(ket("10"), path)
    frame = pl.read_csv(path)
    assert frame.columns == ["row", "col", "re", "im"]
    assert frame.height == 1
    assert frame.row(0) == (2, 2, 1.0, 0.0)


# ---------------------------
# Dense sub-protocol
# ---------------------------


def _pair(k1: tuple[int, ...], k2: tuple[int, ...]) -> DenseState:
    return tensor(basis_state(TRIANGLE, k1), basis_state(TRIANGLE, k2)).as_density()


def test_subprotocol_dense_pure_target_keep():
    pair = _pair((0, 0, 0), (0, 0, 0))
    branch = subprotocol_dense(pair, "A", Coloring.parse("ABC"), TRIANGLE, BranchSelector.keep(2, 1))
    assert branch.probability == pytest.approx(0.25)
    target = build_state(TRIANGLE).as_density()
    assert np.allclose(branch.state.data, target.data, atol=1e-12)


def test_subprotocol_dense_mismatched_measured_index_is_discarded():
    pair = _pair((0, 0, 0), (1, 0, 0))
    branch = subprotocol_dense(pair, "A", Coloring.parse("ABC"), TRIANGLE, BranchSelector.keep(2, 1))
    assert branch.impossible
    assert np.allclose(branch.state.data, 0.0)


def test_subprotocol_dense_checks_sizes():
    with pytest.raises(DimensionMismatchError):
        subprotocol_dense(build_state(TRIANGLE), "A", Coloring.parse("ABC"), TRIANGLE, BranchSelector.keep(2, 1))
    with pytest.raises(DimensionMismatchError):
        subprotocol_dense(_pair((0, 0, 0), (0, 0, 0)), "A", Coloring.parse("ABC"), TRIANGLE, BranchSelector.keep(1, 1))


def test_recycle_selector_corrections():
    selector = BranchSelector.recycle(TRIANGLE, measured=(1,), reduced=(2, 3), pattern=(0, 1), z_bits=(1,))
    assert selector.basis == "z"
    assert selector.corrections == (2,)
    both = BranchSelector.recycle(TRIANGLE, measured=(1,), reduced=(2, 3), pattern=(1, 1), z_bits=(1,))
    assert both.corrections == (2, 3)
    none = BranchSelector.recycle(TRIANGLE, measured=(1,), reduced=(2, 3), pattern=(1, 1), z_bits=(0,))
    assert none.corrections == ()


def test_recycle_branch_realizes_index_transition():
    # |H_a>|H_b> with a = (1, 1, 0), b = (0, 1, 1): the branch yields |H_(b_M, a_R xor b_R)> = |H_(0, 0, 1)>
    pair = _pair((1, 1, 0), (0, 1, 1))
    coloring = Coloring.parse("ABC")
    total = 0.0
    for pattern in ((0, 1), (1, 0), (1, 1)):
        for z in ((0,), (1,)):
            selector = BranchSelector.recycle(TRIANGLE, (1,), (2, 3), pattern, z)
            branch = subprotocol_dense(pair, "A", coloring, TRIANGLE, selector)
            total += branch.probability
            if not branch.impossible:
                expected = basis_state(TRIANGLE, (0, 0, 1)).as_density()
                assert np.allclose(branch.state.data, expected.data, atol=1e-10)
    assert total == pytest.approx(0.75)
