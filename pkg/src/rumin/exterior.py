"""Exterior algebra over a weighted basis theta^1..theta^n.

Multi-indices are 1-based strictly increasing tuples.  Every matrix in the
package is written in the lexicographic basis produced by `enumerate_basis`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Sequence

from .linalg import Matrix, ONE, ZERO

MultiIndex = tuple[int, ...]


def check_weights(n: int, weights: Sequence[int]) -> tuple[int, ...]:
    w = tuple(int(x) for x in weights)
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if len(w) != n:
        raise ValueError(f"expected {n} weights, got {len(w)}")
    if any(x < 1 for x in w):
        raise ValueError("weights must be positive integers")
    if any(a > b for a, b in zip(w, w[1:])):
        raise ValueError("weights must be nondecreasing")
    return w


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting `seq` (entries distinct)."""
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def wedge_indices(I: MultiIndex, J: MultiIndex) -> tuple[int, MultiIndex]:
    """theta^I ^ theta^J = sign * theta^K; sign is 0 when I and J overlap."""
    if set(I) & set(J):
        return 0, ()
    return permutation_sign(I + J), tuple(sorted(I + J))


def complement_sign(I: MultiIndex, n: int) -> tuple[int, MultiIndex]:
    """Sign of the permutation (I, complement of I) together with the complement."""
    if any(a >= b for a, b in zip(I, I[1:])) or any(i < 1 or i > n for i in I):
        raise ValueError(f"{I} is not a valid multi-index for n={n}")
    rest = tuple(i for i in range(1, n + 1) if i not in I)
    return permutation_sign(I + rest), rest


@dataclass(frozen=True)
class BasisTable:
    n: int
    weights: tuple[int, ...]
    basis: tuple[tuple[MultiIndex, ...], ...] = field(repr=False)

    def degree(self, k: int) -> tuple[MultiIndex, ...]:
        if 0 <= k <= self.n:
            return self.basis[k]
        return ()

    def dim(self, k: int) -> int:
        return len(self.degree(k))

    def weight(self, I: MultiIndex) -> int:
        return sum(self.weights[i - 1] for i in I)

    def weights_of(self, k: int) -> list[int]:
        return [self.weight(I) for I in self.degree(k)]

    @cached_property
    def _position(self) -> dict[MultiIndex, int]:
        return {I: p for deg in self.basis for p, I in enumerate(deg)}

    def index(self, I: MultiIndex) -> int:
        return self._position[I]

    @property
    def total_weight(self) -> int:
        return sum(self.weights)


def enumerate_basis(n: int, weights: Sequence[int]) -> BasisTable:
    w = check_weights(n, weights)
    basis = tuple(tuple(combinations(range(1, n + 1), k)) for k in range(n + 1))
    for k, deg in enumerate(basis):
        assert len(deg) == comb(n, k)
    return BasisTable(n, w, basis)


def hodge_star_matrix(k: int, basis: BasisTable, gram: Matrix | None = None) -> Matrix:
    """Hodge star Lambda^k -> Lambda^{n-k} for an orthonormal coframe.

    Only the identity Gram is supported; other metrics go through Gram-conjugated
    adjoints (`calculus.adjoint`).
    """
    n = basis.n
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} out of range for n={n}")
    if gram is not None and gram != Matrix.identity(n):
        raise ValueError("hodge_star_matrix requires an orthonormal coframe (identity Gram)")
    src = basis.degree(k)
    tgt = basis.degree(n - k)
    rows = [[ZERO] * len(src) for _ in tgt]
    for col, I in enumerate(src):
        s, Ibar = complement_sign(I, n)
        rows[basis.index(Ibar)][col] = ONE * s
    return Matrix(rows, len(src))
