"""Local and global noise channels acting on hypergraph-basis states."""

from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import field_validator

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import NoiseParameterError
from hyperpurify.hypergraph import EdgeSet
from hyperpurify.oracle import PAULIS, DenseState, apply_operator
from hyperpurify.states.hb_state import HBState, from_hbasis, pure_target, to_hbasis
from hyperpurify.utils.bits import vertex_mask

NoiseKind = Literal["white", "dephasing", "depolarizing"]


class NoiseSpec(FrozenModel):
    kind: NoiseKind
    p: float

    @field_validator("p")
    @classmethod
    def _check_p(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise NoiseParameterError(f"noise parameter must lie in [0, 1], got {value}")
        return value


def _white(state: HBState, p: float) -> HBState:
    dim = state.dim
    return HBState.of(state.target, p * state.c + (1 - p) * state.trace / dim * np.eye(dim))


def _dephasing(state: HBState, p: float) -> HBState:
    """Z_i maps |H_k> to |H_(k xor e_i)>, so each site is an index-flip mixture."""
    n = state.n_vertices
    idx = np.arange(state.dim)
    c = state.c
    for v in range(1, n + 1):
        perm = idx ^ vertex_mask(n, v)
        c = (1 + p) / 2 * c + (1 - p) / 2 * c[np.ix_(perm, perm)]
    return HBState.of(state.target, c)


def _depolarizing(state: HBState, p: float) -> HBState:
    """No basis-preserving form; applied per site in the computational basis."""
    rho = from_hbasis(state)
    for v in range(1, state.n_vertices + 1):
        mixed = (1 + 3 * p) / 4 * rho.data
        for label in ("X", "Y", "Z"):
            mixed = mixed + (1 - p) / 4 * apply_operator(rho, PAULIS[label], (v,)).data
        rho = DenseState.from_matrix(mixed)
    return to_hbasis(rho, state.target)


def apply_noise(state: HBState, spec: NoiseSpec) -> HBState:
    if spec.p == 1.0:
        return state
    if spec.kind == "white":
        return _white(state, spec.p)
    if spec.kind == "dephasing":
        return _dephasing(state, spec.p)
    return _depolarizing(state, spec.p)


def noisy_target(target: EdgeSet, spec: NoiseSpec) -> HBState:
    return apply_noise(pure_target(target), spec)


def white_noise_for_fidelity(n_vertices: int, f0: float) -> float:
    """p such that white noise on the pure target leaves fidelity ``f0``."""
    dim = 2**n_vertices
    if not 1 / dim <= f0 <= 1:
        raise NoiseParameterError(f"fidelity {f0} is not reachable by white noise on {n_vertices} qubits")
    return (f0 * dim - 1) / (dim - 1)
