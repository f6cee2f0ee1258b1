"""Explicit gates and Kraus maps applied to dense states by tensor contraction."""

from __future__ import annotations

from functools import reduce as fold
from typing import Literal

import numpy as np
from pydantic import Field, model_validator

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import DimensionMismatchError, InvalidEdgeError
from hyperpurify.oracle.dense_state import ComplexArray, DenseState, check_qubit

_I = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

PAULIS: dict[str, ComplexArray] = {"I": _I, "X": _X, "Y": _Y, "Z": _Z}

GateKind = Literal["C", "Z", "X", "Y", "CNOT"]


def _n_bits(size: int) -> int:
    bits = size.bit_length() - 1
    if 1 << bits != size:
        raise DimensionMismatchError(f"operator dimension {size} is not a power of two")
    return bits


def _apply_axes(t: ComplexArray, op: ComplexArray, axes: list[int]) -> ComplexArray:
    """Contract ``op`` (2^m_out x 2^m_in) into the tensor axes ``axes``.

    When m_out < m_in the leading axes are consumed and the outputs sit at the
    positions of the last m_out axes.
    """
    m_in = len(axes)
    m_out = _n_bits(op.shape[0])
    op_t = op.reshape((2,) * (m_out + m_in))
    res = np.tensordot(op_t, t, axes=(list(range(m_out, m_out + m_in)), axes))
    dropped = axes[: m_in - m_out]
    kept = axes[m_in - m_out :]
    rest = [i for i in range(t.ndim) if i not in axes]
    order = []
    for i in range(t.ndim):
        if i in dropped:
            continue
        order.append(kept.index(i) if i in kept else m_out + rest.index(i))
    return np.transpose(res, order)


def apply_operator(state: DenseState, op: ComplexArray, targets: tuple[int, ...]) -> DenseState:
    """K psi, or K rho K^dagger, with ``op`` acting on qubits ``targets`` (1-based, in op order)."""
    n = state.n_qubits
    for q in targets:
        check_qubit(n, q)
    if len(set(targets)) != len(targets):
        raise InvalidEdgeError(f"repeated target qubit in {targets}")
    if op.shape[1] != 2 ** len(targets):
        raise DimensionMismatchError(f"operator of shape {op.shape} cannot act on {len(targets)} qubits")
    removed = len(targets) - _n_bits(op.shape[0])
    n_out = n - removed
    ket_axes = [q - 1 for q in targets]
    if state.is_pure:
        t = _apply_axes(state.data.reshape((2,) * n), op, ket_axes)
        return DenseState(n_qubits=n_out, data=t.reshape(2**n_out))
    t = _apply_axes(state.data.reshape((2,) * (2 * n)), op, ket_axes)
    t = _apply_axes(t, op.conj(), [n_out + q - 1 for q in targets])
    mat = t.reshape(2**n_out, 2**n_out)
    return DenseState(n_qubits=n_out, data=(mat + mat.conj().T) / 2)


class Gate(FrozenModel):
    """C_e on an edge, a single-qubit Pauli, or CNOT (control, target)."""

    kind: GateKind
    targets: tuple[int, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_arity(self) -> "Gate":
        if self.kind in ("Z", "X", "Y") and len(self.targets) != 1:
            raise InvalidEdgeError(f"{self.kind} acts on one qubit, got {self.targets}")
        if self.kind == "CNOT" and (len(self.targets) != 2 or self.targets[0] == self.targets[1]):
            raise InvalidEdgeError(f"CNOT needs distinct control and target, got {self.targets}")
        return self

    def matrix(self) -> ComplexArray:
        if self.kind in PAULIS:
            return PAULIS[self.kind]
        if self.kind == "CNOT":
            m = np.eye(4, dtype=np.complex128)
            m[2:, 2:] = _X
            return m
        dim = 2 ** len(self.targets)
        m = np.eye(dim, dtype=np.complex128)
        m[-1, -1] = -1
        return m


def apply_unitary(state: DenseState, gate: Gate) -> DenseState:
    return apply_operator(state, gate.matrix(), gate.targets)


def pauli_string(labels: str) -> ComplexArray:
    return fold(np.kron, (PAULIS[c] for c in labels))


class Kraus(FrozenModel):
    name: str
    matrix: ComplexArray
    targets: tuple[int, ...]


def reduction_P(v1: int, v2: int) -> Kraus:
    """|0><00| + |1><11| with the output on ``v2``."""
    m = np.zeros((2, 4), dtype=np.complex128)
    m[0, 0b00] = 1
    m[1, 0b11] = 1
    return Kraus(name="P", matrix=m, targets=(v1, v2))


def reduction_P_perp(v1: int, v2: int) -> Kraus:
    """|0><10| + |1><01|, equal to P (X (x) 1)."""
    m = np.zeros((2, 4), dtype=np.complex128)
    m[0, 0b10] = 1
    m[1, 0b01] = 1
    return Kraus(name="P_perp", matrix=m, targets=(v1, v2))


_BRAS: dict[str, ComplexArray] = {
    "+": np.array([[1, 1]], dtype=np.complex128) / np.sqrt(2),
    "-": np.array([[1, -1]], dtype=np.complex128) / np.sqrt(2),
    "0": np.array([[1, 0]], dtype=np.complex128),
    "1": np.array([[0, 1]], dtype=np.complex128),
}


def measurement_bra(qubit: int, outcome: Literal["+", "-", "0", "1"]) -> Kraus:
    """Destructive single-qubit measurement; the qubit is traced out."""
    return Kraus(name=f"<{outcome}|", matrix=_BRAS[outcome], targets=(qubit,))


def projector(qubit: int, basis: Literal["x", "z"], outcome: int) -> Kraus:
    """(1 +- X)/2 or (1 +- Z)/2, keeping the qubit."""
    pauli = _X if basis == "x" else _Z
    return Kraus(name=f"(1{'+' if outcome > 0 else '-'}{basis.upper()})/2", matrix=(_I + outcome * pauli) / 2, targets=(qubit,))


def apply_kraus(state: DenseState, kraus: Kraus) -> tuple[DenseState, float]:
    """Subnormalized K rho K^dagger and its trace; the caller normalizes."""
    out = apply_operator(state, kraus.matrix, kraus.targets)
    return out, max(out.trace, 0.0)
