"""Index bookkeeping for the two-copy maps.

Coefficient matrices are regrouped so that the measured-color bits come first:
``blocks[m, r, m', r']`` is ``c[(m, r), (m', r')]``. The reduced bits are then
the inner axes the Walsh-Hadamard transforms act on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from hyperpurify.utils.bits import hadamard, parity


@dataclass(frozen=True)
class Layout:
    n: int
    measured: tuple[int, ...]
    reduced: tuple[int, ...]
    perm: npt.NDArray[np.int64]

    @property
    def m_dim(self) -> int:
        return 2 ** len(self.measured)

    @property
    def r_dim(self) -> int:
        return 2 ** len(self.reduced)

    @property
    def h(self) -> npt.NDArray[np.float64]:
        return hadamard(len(self.reduced))

    def to_blocks(self, c: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        grouped = c[np.ix_(self.perm, self.perm)]
        return grouped.reshape(self.m_dim, self.r_dim, self.m_dim, self.r_dim)

    def from_blocks(self, blocks: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        dim = 2**self.n
        out = np.empty((dim, dim), dtype=np.complex128)
        out[np.ix_(self.perm, self.perm)] = blocks.reshape(dim, dim)
        return out

    def sign_vector(self, bits: tuple[int, ...], size: int) -> npt.NDArray[np.float64]:
        """(-1)^(bits . u) for u in 0..size-1, ``bits`` MSB first."""
        mask = 0
        for b in bits:
            mask = (mask << 1) | b
        return np.asarray(1 - 2 * parity(np.arange(size) & mask), dtype=np.float64)

    def wht_inner(self, blocks: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        """Unnormalized transform on both reduced axes of a block tensor."""
        h = self.h
        return np.einsum("ir,arbs,js->aibj", h, blocks, h)


@lru_cache(maxsize=256)
def layout(n: int, measured: tuple[int, ...], reduced: tuple[int, ...]) -> Layout:
    order = [*measured, *reduced]
    perm = np.zeros(2**n, dtype=np.int64)
    for new in range(2**n):
        orig = 0
        for pos, v in enumerate(order):
            bit = (new >> (n - 1 - pos)) & 1
            orig |= bit << (n - v)
        perm[new] = orig
    perm.setflags(write=False)
    return Layout(n=n, measured=measured, reduced=reduced, perm=perm)
