"""Operator families on the exterior algebra: CE differentials, Grams, adjoints, gr.

An `OperatorFamily` holds one matrix per source degree k = 0..n, mapping
Lambda^k -> Lambda^{k+shift}.  Rows index the target basis, columns the source
basis (the convention of the printed matrix tables: Mat(d^(0)) is a column).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Mapping

from .exterior import BasisTable, MultiIndex, enumerate_basis, wedge_indices
from .lie import LieAlgebraSpec, associated_graded, require_valid
from .linalg import ONE, ZERO, Matrix, det, inverse, is_spd


@dataclass(frozen=True)
class OperatorFamily:
    basis: BasisTable
    shift: int
    mats: tuple[Matrix, ...]

    def __post_init__(self):
        b = self.basis
        if len(self.mats) != b.n + 1:
            raise ValueError("need one matrix per degree 0..n")
        for k, M in enumerate(self.mats):
            want = (b.dim(k + self.shift), b.dim(k))
            if M.shape != want:
                raise ValueError(f"degree {k}: shape {M.shape}, expected {want}")

    @property
    def n(self) -> int:
        return self.basis.n

    def __getitem__(self, k: int) -> Matrix:
        return self.mats[k]

    def _same_space(self, other: "OperatorFamily") -> None:
        if self.basis != other.basis:
            raise ValueError("operator families live on different exterior algebras")

    def __add__(self, other: "OperatorFamily") -> "OperatorFamily":
        self._same_space(other)
        if self.shift != other.shift:
            raise ValueError("cannot add families with different degree shifts")
        return OperatorFamily(self.basis, self.shift, tuple(a + b for a, b in zip(self.mats, other.mats)))

    def __sub__(self, other: "OperatorFamily") -> "OperatorFamily":
        return self + (-other)

    def __neg__(self) -> "OperatorFamily":
        return OperatorFamily(self.basis, self.shift, tuple(-a for a in self.mats))

    def __matmul__(self, other: "OperatorFamily") -> "OperatorFamily":
        """Composition self ∘ other."""
        self._same_space(other)
        b = self.basis
        mats = []
        for k in range(b.n + 1):
            mid = k + other.shift
            if 0 <= mid <= b.n:
                mats.append(self.mats[mid] @ other.mats[k])
            else:
                mats.append(Matrix.zeros(b.dim(k + other.shift + self.shift), b.dim(k)))
        return OperatorFamily(b, self.shift + other.shift, tuple(mats))

    def scale(self, c) -> "OperatorFamily":
        return OperatorFamily(self.basis, self.shift, tuple(M.scale(c) for M in self.mats))

    def is_zero(self) -> bool:
        return all(M.is_zero() for M in self.mats)

    def first_difference(self, other: "OperatorFamily"):
        """(degree, row, col, self entry, other entry) or None."""
        self._same_space(other)
        if self.shift != other.shift:
            return ("shift", self.shift, other.shift)
        for k, (a, b) in enumerate(zip(self.mats, other.mats)):
            diff = a.first_difference(b)
            if diff is not None:
                return (k,) + diff
        return None

    def map_degrees(self, f: Callable[[int, Matrix], Matrix], shift: int | None = None) -> "OperatorFamily":
        return OperatorFamily(self.basis, self.shift if shift is None else shift,
                              tuple(f(k, M) for k, M in enumerate(self.mats)))


def identity_family(basis: BasisTable) -> OperatorFamily:
    return OperatorFamily(basis, 0, tuple(Matrix.identity(basis.dim(k)) for k in range(basis.n + 1)))


def zero_family(basis: BasisTable, shift: int) -> OperatorFamily:
    return OperatorFamily(basis, shift, tuple(Matrix.zeros(basis.dim(k + shift), basis.dim(k))
                                              for k in range(basis.n + 1)))


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg differential


def degree_one_differential(spec: LieAlgebraSpec) -> dict[int, dict[MultiIndex, object]]:
    """d(theta^k) = - sum_{i<j} c_ij^k theta^i ^ theta^j, as {k: {(i, j): coeff}}."""
    out: dict[int, dict[MultiIndex, object]] = {k: {} for k in range(1, spec.n + 1)}
    for (i, j), vec in spec.brackets.items():
        for k, c in vec.items():
            out[k][(i, j)] = out[k].get((i, j), ZERO) - c
    return out


def leibniz_extension(basis: BasisTable, d1: Mapping[int, Mapping[MultiIndex, object]],
                      zero=ZERO) -> list[Matrix]:
    """Extend a degree-1 derivation to all degrees (degree 0 maps to 0).

    d(theta^{i_1} ^ ... ^ theta^{i_k}) = sum_a (-1)^{a-1} theta^{i_1} ^ .. d theta^{i_a} .. ^ theta^{i_k}.
    Coefficients may be any ring elements; this is shared with the contact tables.
    """
    n = basis.n
    mats = []
    for k in range(n + 1):
        src = basis.degree(k)
        tgt = basis.degree(k + 1)
        rows = [[zero] * len(src) for _ in tgt]
        if k >= 1:
            for col, I in enumerate(src):
                for a, i in enumerate(I):
                    before, after = I[:a], I[a + 1:]
                    for pair, coef in d1[i].items():
                        s1, K1 = wedge_indices(before, pair)
                        if not s1:
                            continue
                        s2, K = wedge_indices(K1, after)
                        if not s2:
                            continue
                        sign = (-1) ** a * s1 * s2
                        r = basis.index(K)
                        rows[r][col] = rows[r][col] + (coef if sign > 0 else -coef)
        mats.append(Matrix(rows, len(src), zero))
    return mats


def ce_differential(spec: LieAlgebraSpec) -> OperatorFamily:
    require_valid(spec)
    basis = enumerate_basis(spec.n, spec.weights)
    fam = OperatorFamily(basis, 1, tuple(leibniz_extension(basis, degree_one_differential(spec))))
    sq = fam @ fam
    if not sq.is_zero():
        raise AssertionError(f"d^2 != 0 for {spec.name}: {sq.first_difference(zero_family(basis, 2))}")
    return fam


def base_differential(spec: LieAlgebraSpec) -> OperatorFamily:
    """d0: the CE differential of the associated graded algebra, in the same basis."""
    return ce_differential(associated_graded(spec))


# ---------------------------------------------------------------------------
# Gram families


@dataclass(frozen=True)
class GramFamily:
    basis: BasisTable
    mats: tuple[Matrix, ...]

    def __getitem__(self, k: int) -> Matrix:
        if 0 <= k <= self.basis.n:
            return self.mats[k]
        return Matrix.zeros(0, 0)

    def fingerprint(self) -> str:
        import hashlib
        h = hashlib.sha256(repr(self.mats[1].rows).encode()).hexdigest()
        return h[:12]

    def is_identity(self) -> bool:
        return self.mats[1] == Matrix.identity(self.basis.n)


def gram_family(G1: Matrix, basis: BasisTable) -> GramFamily:
    """G_k[I][J] = det(<theta^{i_a}, theta^{j_b}>)."""
    n = basis.n
    if G1.shape != (n, n) or not is_spd(G1):
        raise ValueError("degree-1 Gram must be a symmetric positive-definite n x n matrix")
    mats = [Matrix([[ONE]])]
    for k in range(1, n + 1):
        deg = basis.degree(k)
        rows = []
        for I in deg:
            rows.append([det(Matrix([[G1[i - 1, j - 1] for j in J] for i in I])) for J in deg])
        mats.append(Matrix(rows))
    return GramFamily(basis, tuple(mats))


def identity_gram(basis: BasisTable) -> GramFamily:
    return GramFamily(basis, tuple(Matrix.identity(basis.dim(k)) for k in range(basis.n + 1)))


def check_weight_orthogonal(G1: Matrix, weights) -> None:
    """Pipeline premise: distinct weight layers are G-orthogonal."""
    for i, j, x in G1.nonzero_entries():
        if weights[i] != weights[j]:
            raise ValueError(f"Gram couples layers of different weight at ({i + 1},{j + 1}) = {x}")


def coframe_gram(B: Matrix) -> Matrix:
    """Gram on theta making the coframe theta_hat = B theta orthonormal: B^{-1} B^{-T}."""
    Binv = inverse(B)
    return Binv @ Binv.T()


def adjoint(T: OperatorFamily, G: GramFamily) -> OperatorFamily:
    """G-adjoint: per degree G_k^{-1} M_k^T G_{k+s}."""
    b = T.basis
    if G.basis != b:
        raise ValueError("Gram family and operator live on different exterior algebras")
    s = T.shift
    out = []
    for j in range(b.n + 1):
        # the adjoint on degree j is the transpose of T on degree j - s
        k = j - s
        if 0 <= k <= b.n:
            M = T.mats[k]
            out.append(inverse(G[k]) @ M.T() @ G[j])
        else:
            out.append(Matrix.zeros(0, b.dim(j)))
    return OperatorFamily(b, -s, tuple(out))


# ---------------------------------------------------------------------------
# weights and gr


def gr_part(T: OperatorFamily) -> OperatorFamily:
    b = T.basis

    def keep(k, M):
        sw = b.weights_of(k)
        tw = b.weights_of(k + T.shift)
        return Matrix([[x if tw[i] == sw[j] else M.zero for j, x in enumerate(r)]
                       for i, r in enumerate(M.rows)], M.ncols, M.zero)

    return T.map_degrees(keep)


@dataclass(frozen=True)
class WeightWitness:
    degree: int
    source: MultiIndex
    target: MultiIndex
    source_weight: int
    target_weight: int
    entry: object

    def __str__(self):
        return (f"degree {self.degree}: {self.source} (weight {self.source_weight}) -> "
                f"{self.target} (weight {self.target_weight}), entry {self.entry}")


def _scan(T: OperatorFamily, bad: Callable[[int, int], bool]) -> WeightWitness | None:
    b = T.basis
    for k, M in enumerate(T.mats):
        src = b.degree(k)
        tgt = b.degree(k + T.shift)
        for i, j, x in M.nonzero_entries():
            sw, tw = b.weight(src[j]), b.weight(tgt[i])
            if bad(sw, tw):
                return WeightWitness(k, src[j], tgt[i], sw, tw, x)
    return None


def respects_filtration(T: OperatorFamily) -> tuple[bool, WeightWitness | None]:
    w = _scan(T, lambda sw, tw: tw < sw)
    return w is None, w


def increases_weight(T: OperatorFamily) -> tuple[bool, WeightWitness | None]:
    w = _scan(T, lambda sw, tw: tw <= sw)
    return w is None, w


def nilpotency_bound(weights, k: int | None = None):
    """N0 per degree: (max weight - min weight) + 1 over the degree-k basis."""
    n = len(weights)
    b = enumerate_basis(n, weights)
    bounds = []
    for deg in range(n + 1):
        ws = b.weights_of(deg)
        bounds.append(max(ws) - min(ws) + 1)
    return bounds if k is None else bounds[k]
