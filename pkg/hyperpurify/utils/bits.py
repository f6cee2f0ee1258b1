"""Bit-vector <-> integer index conventions shared by every module.

Vertex 1 is the most significant bit: for ``n`` qubits, vertex ``v`` sits at
bit position ``n - v`` of the basis index.
"""

from functools import lru_cache
from typing import Sequence

import numpy as np
import numpy.typing as npt


def vertex_mask(n: int, vertex: int) -> int:
    return 1 << (n - vertex)


def vertices_mask(n: int, vertices: Sequence[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= vertex_mask(n, v)
    return mask


def bits_to_index(bits: Sequence[int]) -> int:
    index = 0
    for b in bits:
        index = (index << 1) | (int(b) & 1)
    return index


def parity(values: npt.NDArray[np.int64]) -> npt.NDArray[np.int64]:
    """Elementwise popcount mod 2."""
    values = values.copy()
    out = np.zeros_like(values)
    while np.any(values):
        out ^= values & 1
        values >>= 1
    return out


@lru_cache(maxsize=None)
def _hadamard(n_bits: int) -> npt.NDArray[np.float64]:
    h = np.ones((1, 1))
    for _ in range(n_bits):
        h = np.block([[h, h], [h, -h]])
    h.setflags(write=False)
    return h


def hadamard(n_bits: int) -> npt.NDArray[np.float64]:
    """Unnormalized Sylvester matrix, ``H[u, s] = (-1)^popcount(u & s)``."""
    return _hadamard(n_bits)
