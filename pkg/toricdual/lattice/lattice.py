"""Integral lattices given by a symmetric Gram matrix."""

from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from toricdual.linalg.matrix import IntMatrix, MatrixLike, det, int_matrix, signature
from toricdual.linalg.normalforms import invariant_factors
from toricdual.utils.exceptions import DimensionMismatch


def block_diagonal(*blocks: MatrixLike) -> IntMatrix:
    blocks = [int_matrix(b) for b in blocks]
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=int).astype(object)
    offset = 0
    for b in blocks:
        size = b.shape[0]
        out[offset : offset + size, offset : offset + size] = b
        offset += size
    return int_matrix(out, cols=n)


@dataclass(frozen=True, eq=False)
class IntLattice:
    """
    Even or odd integral lattice.

    Parameters
    ----------
    gram : IntMatrix
        Symmetric Gram matrix in some basis.
    """

    gram: IntMatrix

    def __post_init__(self):
        gram = int_matrix(self.gram)
        if gram.shape[0] != gram.shape[1] or not np.all(gram == gram.T):
            raise DimensionMismatch("A Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", gram)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntLattice) and np.array_equal(self.gram, other.gram)

    def __hash__(self) -> int:
        return hash(tuple(map(tuple, self.gram.tolist())))

    def __repr__(self) -> str:
        return f"IntLattice(rank={self.rank}, signature={self.signature})"

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    @cached_property
    def inertia(self) -> Tuple[int, int, int]:
        return signature(self.gram)

    @property
    def signature(self) -> Tuple[int, int]:
        """``(t_+, t_-)``."""
        positive, negative, _ = self.inertia
        return positive, negative

    @cached_property
    def discriminant(self) -> int:
        """Signed determinant of the Gram matrix."""
        return det(self.gram)

    @property
    def is_nondegenerate(self) -> bool:
        return self.discriminant != 0

    @property
    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def invariant_factors(self) -> Tuple[int, ...]:
        """Nontrivial invariant factors of the discriminant group."""
        return tuple(f for f in invariant_factors(self.gram) if f != 1)

    def direct_sum(self, *others: "IntLattice") -> "IntLattice":
        return IntLattice(block_diagonal(self.gram, *(o.gram for o in others)))

    def __add__(self, other: "IntLattice") -> "IntLattice":
        return self.direct_sum(other)

    def pullback(self, basis: MatrixLike) -> "IntLattice":
        """Sublattice spanned by the columns of ``basis``."""
        p = int_matrix(basis)
        if p.shape[0] != self.rank:
            raise DimensionMismatch(
                f"Basis vectors have length {p.shape[0]}, lattice rank is {self.rank}"
            )
        return IntLattice(int_matrix(p.T @ self.gram @ p, cols=p.shape[1]))

    def invariants(self) -> dict:
        return {
            "rank": self.rank,
            "signature": list(self.signature),
            "discriminant": self.discriminant,
            "invariant_factors": list(self.invariant_factors),
            "even": self.is_even,
        }
