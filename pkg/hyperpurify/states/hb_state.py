"""Mixed states written in the hypergraph basis of a fixed target.

``c[k, k']`` is the coefficient of ``|H_k><H_k'|``; index k uses the
project-wide convention (vertex 1 is the most significant bit).
"""

from __future__ import annotations

from typing import Any, Sequence

import numpy as np
import numpy.typing as npt
from pydantic import model_validator

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import DimensionMismatchError, ZeroTraceError
from hyperpurify.hypergraph import EdgeSet, format_hypergraph, parse_hypergraph
from hyperpurify.oracle import DenseState, hypergraph_basis
from hyperpurify.oracle.dense_state import ComplexArray

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
ZERO_TRACE = 1e-15


class HBState(FrozenModel):
    target: EdgeSet
    c: ComplexArray

    @model_validator(mode="after")
    def _check_matrix(self) -> "HBState":
        dim = 2**self.target.n_vertices
        if self.c.shape != (dim, dim):
            raise DimensionMismatchError(f"coefficient matrix of shape {self.c.shape} does not fit {self.target.n_vertices} vertices")
        if not np.allclose(self.c, self.c.conj().T, atol=HERMITIAN_TOL, rtol=0.0):
            raise DimensionMismatchError("coefficient matrix is not Hermitian")
        if self.trace > 1 + TRACE_TOL:
            raise DimensionMismatchError(f"trace {self.trace} exceeds one")
        return self

    @classmethod
    def of(cls, target: EdgeSet, c: npt.ArrayLike) -> "HBState":
        """Build from any nearly-Hermitian matrix, dropping the anti-Hermitian rounding."""
        mat = np.asarray(c, dtype=np.complex128)
        return cls(target=target, c=(mat + mat.conj().T) / 2)

    @property
    def n_vertices(self) -> int:
        return self.target.n_vertices

    @property
    def dim(self) -> int:
        return 2**self.target.n_vertices

    @property
    def trace(self) -> float:
        return float(np.trace(self.c).real)

    def is_psd(self, tol: float = 1e-10) -> bool:
        return bool(np.linalg.eigvalsh(self.c).min() >= -tol)

    def diagonal(self) -> npt.NDArray[np.float64]:
        return np.asarray(self.c.diagonal().real, dtype=np.float64)


def fidelity(state: HBState) -> float:
    """Overlap with |H_0>, normalized by the trace."""
    t = state.trace
    if t < ZERO_TRACE:
        raise ZeroTraceError("fidelity of a zero-trace state is undefined")
    return float(state.c[0, 0].real) / t


def normalized(state: HBState) -> HBState:
    t = state.trace
    if t < ZERO_TRACE:
        raise ZeroTraceError("cannot normalize a zero-trace state")
    return HBState.of(state.target, state.c / t)


def _check_dims(rho: DenseState, target: EdgeSet) -> None:
    if rho.n_qubits != target.n_vertices:
        raise DimensionMismatchError(f"state on {rho.n_qubits} qubits, target on {target.n_vertices} vertices")


def to_hbasis(rho: DenseState, target: EdgeSet) -> HBState:
    _check_dims(rho, target)
    b = hypergraph_basis(target)
    return HBState.of(target, b.T @ rho.density() @ b)


def from_hbasis(state: HBState) -> DenseState:
    b = hypergraph_basis(state.target)
    return DenseState.from_matrix(b @ state.c @ b.T)


def pure_target(target: EdgeSet) -> HBState:
    c = np.zeros((2**target.n_vertices,) * 2, dtype=np.complex128)
    c[0, 0] = 1.0
    return HBState(target=target, c=c)


def basis_projector(target: EdgeSet, k: int) -> HBState:
    """|H_k><H_k| for the integer index k."""
    c = np.zeros((2**target.n_vertices,) * 2, dtype=np.complex128)
    c[k, k] = 1.0
    return HBState(target=target, c=c)


def maximally_mixed(target: EdgeSet) -> HBState:
    dim = 2**target.n_vertices
    return HBState(target=target, c=np.eye(dim, dtype=np.complex128) / dim)


def mixture(states: Sequence[HBState], weights: Sequence[float]) -> HBState:
    if not states or len(states) != len(weights):
        raise DimensionMismatchError("mixture needs one weight per state")
    target = states[0].target
    if any(s.target != target for s in states):
        raise DimensionMismatchError("mixture components live in different hypergraph bases")
    c = sum((w * s.c for s, w in zip(states, weights)), np.zeros_like(states[0].c))
    return HBState.of(target, c)


def trace_distance(first: HBState, second: HBState) -> float:
    """Half the trace norm of the difference; the basis is orthonormal so no conversion is needed."""
    if first.target != second.target:
        raise DimensionMismatchError("trace distance needs states over the same target")
    return float(0.5 * np.abs(np.linalg.eigvalsh(first.c - second.c)).sum())


def random_state(target: EdgeSet, rng: np.random.Generator, rank: int | None = None) -> HBState:
    """Random density matrix W W^dagger / tr, W Gaussian of the given rank."""
    dim = 2**target.n_vertices
    r = rank or dim
    w = rng.normal(size=(dim, r)) + 1j * rng.normal(size=(dim, r))
    rho = w @ w.conj().T
    return HBState.of(target, rho / np.trace(rho).real)


def to_snapshot(state: HBState) -> dict[str, Any]:
    return {
        "n": state.n_vertices,
        "edges": format_hypergraph(state.target),
        "trace": state.trace,
        "fidelity": fidelity(state) if state.trace >= ZERO_TRACE else 0.0,
        "c_matrix": [[[float(z.real), float(z.imag)] for z in row] for row in state.c],
    }


def from_snapshot(data: dict[str, Any]) -> HBState:
    target = parse_hypergraph(data["edges"])
    if target.n_vertices != data["n"]:
        raise DimensionMismatchError(f"snapshot n={data['n']} disagrees with edges {data['edges']!r}")
    raw = np.asarray(data["c_matrix"], dtype=np.float64)
    return HBState.of(target, raw[..., 0] + 1j * raw[..., 1])
