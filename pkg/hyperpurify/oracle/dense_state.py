"""Computational-basis states built straight from the hypergraph definition."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np
import numpy.typing as npt
import polars as pl
from pydantic import Field, model_validator

from hyperpurify import config
from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import DimensionMismatchError, ResourceGuardError, VertexOutOfRangeError
from hyperpurify.hypergraph.edge_set import EdgeSet
from hyperpurify.utils.bits import bits_to_index, hadamard, parity, vertex_mask, vertices_mask

ComplexArray = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12


class DenseState(FrozenModel):
    """A pure vector of length 2^n or a (possibly subnormalized) density matrix."""

    n_qubits: int = Field(ge=0)
    data: ComplexArray

    @model_validator(mode="after")
    def _check_shape(self) -> "DenseState":
        dim = 2**self.n_qubits
        if self.data.shape not in ((dim,), (dim, dim)):
            raise DimensionMismatchError(f"{self.n_qubits} qubits need shape ({dim},) or ({dim}, {dim}), got {self.data.shape}")
        if self.data.ndim == 2:
            if not np.allclose(self.data, self.data.conj().T, atol=HERMITIAN_TOL, rtol=0.0):
                raise DimensionMismatchError("density matrix is not Hermitian")
        if self.trace > 1 + TRACE_TOL:
            raise DimensionMismatchError(f"trace {self.trace} exceeds one")
        return self

    @classmethod
    def from_vector(cls, vector: npt.ArrayLike) -> "DenseState":
        vec = np.asarray(vector, dtype=np.complex128)
        return cls(n_qubits=int(round(np.log2(vec.shape[0]))), data=vec)

    @classmethod
    def from_matrix(cls, matrix: npt.ArrayLike) -> "DenseState":
        mat = np.asarray(matrix, dtype=np.complex128)
        mat = (mat + mat.conj().T) / 2
        return cls(n_qubits=int(round(np.log2(mat.shape[0]))), data=mat)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @property
    def is_pure(self) -> bool:
        return self.data.ndim == 1

    @property
    def trace(self) -> float:
        if self.is_pure:
            return float(np.vdot(self.data, self.data).real)
        return float(np.trace(self.data).real)

    def density(self) -> ComplexArray:
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return self.data

    def as_density(self) -> "DenseState":
        return self if not self.is_pure else DenseState(n_qubits=self.n_qubits, data=self.density())

    def normalized(self) -> "DenseState":
        t = self.trace
        if self.is_pure:
            return DenseState(n_qubits=self.n_qubits, data=self.data / np.sqrt(t))
        return DenseState(n_qubits=self.n_qubits, data=self.data / t)

    def is_psd(self, tol: float = 1e-10) -> bool:
        if self.is_pure:
            return True
        return bool(np.linalg.eigvalsh(self.data).min() >= -tol)


def _phase_vector(edges: EdgeSet) -> npt.NDArray[np.float64]:
    n = edges.n_vertices
    idx = np.arange(2**n)
    phase = np.full(2**n, float(edges.sign))
    for edge in edges.edges:
        m = vertices_mask(n, edge)
        phase[(idx & m) == m] *= -1.0
    return phase


def build_state(edges: EdgeSet) -> DenseState:
    """sign * prod_e C_e |+>^n, amplitudes +-2^(-n/2)."""
    n = edges.n_vertices
    if n > config.ORACLE_MAX_QUBITS:
        raise ResourceGuardError(f"{n} qubits exceed the dense limit of {config.ORACLE_MAX_QUBITS}")
    return DenseState(n_qubits=n, data=(_phase_vector(edges) / np.sqrt(2**n)).astype(np.complex128))


def basis_state(edges: EdgeSet, k: Sequence[int]) -> DenseState:
    """|H_k> = Z^k |H_0>."""
    n = edges.n_vertices
    if len(k) != n:
        raise DimensionMismatchError(f"index {tuple(k)} has length {len(k)}, hypergraph has {n} vertices")
    base = build_state(edges).data
    signs = 1 - 2 * parity(np.arange(2**n) & bits_to_index(k))
    return DenseState(n_qubits=n, data=base * signs)


def hypergraph_basis(edges: EdgeSet) -> npt.NDArray[np.float64]:
    """Real orthogonal matrix whose column k is |H_k>."""
    n = edges.n_vertices
    if n > config.ORACLE_MAX_QUBITS:
        raise ResourceGuardError(f"{n} qubits exceed the dense limit of {config.ORACLE_MAX_QUBITS}")
    return _phase_vector(edges)[:, None] * hadamard(n) / np.sqrt(2**n)


class StabilizerOp(FrozenModel):
    vertex: int
    matrix: ComplexArray


def stabilizer(edges: EdgeSet, vertex: int) -> StabilizerOp:
    """S_i = U_ph X_i U_ph^dagger as a dense signed permutation matrix."""
    edges.check_vertex(vertex)
    n = edges.n_vertices
    phase = _phase_vector(edges)
    idx = np.arange(2**n)
    flipped = idx ^ vertex_mask(n, vertex)
    matrix = np.zeros((2**n, 2**n), dtype=np.complex128)
    matrix[idx, flipped] = phase[idx] * phase[flipped]
    return StabilizerOp(vertex=vertex, matrix=matrix)


def tensor(first: DenseState, second: DenseState) -> DenseState:
    """First state's qubits come first."""
    if first.is_pure and second.is_pure:
        return DenseState(n_qubits=first.n_qubits + second.n_qubits, data=np.kron(first.data, second.data))
    return DenseState(n_qubits=first.n_qubits + second.n_qubits, data=np.kron(first.density(), second.density()))


def trace_distance(first: DenseState, second: DenseState) -> float:
    if first.n_qubits != second.n_qubits:
        raise DimensionMismatchError("trace distance needs states of equal size")
    diff = first.density() - second.density()
    return float(0.5 * np.abs(np.linalg.eigvalsh(diff)).sum())


def check_qubit(n_qubits: int, qubit: int) -> None:
    if not 1 <= qubit <= n_qubits:
        raise VertexOutOfRangeError(qubit, n_qubits)


def dump_matrix_csv(state: DenseState, path: str | Path) -> None:
    """Debug dump, one row per nonzero entry with re/im parts."""
    rho = state.density()
    rows, cols = np.nonzero(np.abs(rho) > 0)
    pl.DataFrame(
        {
            "row": rows.astype(np.int64),
            "col": cols.astype(np.int64),
            "re": rho[rows, cols].real,
            "im": rho[rows, cols].imag,
        }
    ).write_csv(path)
