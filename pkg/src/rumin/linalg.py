"""Exact matrices.

`Matrix` is a small immutable row-major container whose entries may be any
ring elements supporting ``+``, ``-``, ``*`` and truthiness (``Fraction`` for
the Lie-algebra pipeline, `NCOperator` for the contact tables).  The
elimination routines below are only meaningful over the rationals.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Any, Callable, Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact entries")
    return Fraction(x)


class Matrix:
    __slots__ = ("rows", "nrows", "ncols", "zero")

    def __init__(self, rows: Iterable[Sequence[Any]], ncols: int | None = None, zero: Any = ZERO):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self.zero = zero

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero: Any = ZERO) -> "Matrix":
        return cls([[zero] * ncols for _ in range(nrows)], ncols, zero)

    @classmethod
    def identity(cls, n: int, zero: Any = ZERO, one: Any = ONE) -> "Matrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], n, zero)

    @classmethod
    def diag(cls, entries: Sequence[Any], zero: Any = ZERO) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)], n, zero)

    @classmethod
    def from_rational(cls, rows: Iterable[Sequence[Any]], ncols: int | None = None) -> "Matrix":
        return cls([[as_fraction(x) for x in r] for r in rows], ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Any]], nrows: int, zero: Any = ZERO) -> "Matrix":
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols), zero)

    # access --------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def map(self, f: Callable[[Any], Any], zero: Any = None) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.rows], self.ncols,
                      self.zero if zero is None else zero)

    def nonzero_entries(self):
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if x:
                    yield i, j, x

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # algebra ---------------------------------------------------------------
    def T(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                      self.nrows, self.zero)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols, self.zero)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols, self.zero)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows], self.ncols, self.zero)

    def scale(self, c) -> "Matrix":
        """Left scalar multiplication ``c * M`` (order matters for operator entries)."""
        return Matrix([[c * a for a in r] for r in self.rows], self.ncols, self.zero)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        zero = self.zero
        cols = other.columns()
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                acc = zero
                for k, a in nz:
                    b = c[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, other.ncols, zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix{self.shape}[{body}]"

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def first_difference(self, other: "Matrix"):
        """(i, j, self[i,j], other[i,j]) for the first differing entry, else None."""
        self._check_same_shape(other)
        for i, (r, s) in enumerate(zip(self.rows, other.rows)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a != b:
                    return i, j, a, b
        return None


def hstack(blocks: Sequence[Matrix], nrows: int) -> Matrix:
    rows = [[] for _ in range(nrows)]
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("row count mismatch in hstack")
        for i in range(nrows):
            rows[i].extend(b.rows[i])
    return Matrix(rows, sum(b.ncols for b in blocks))


# --------------------------------------------------------------------------
# elimination over Q


def _primitive(vec: Sequence[Fraction]) -> list[Fraction]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    den = 1
    for x in vec:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [Fraction(x // g) for x in ints]


def rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting. Returns (rows, pivot columns)."""
    A = [list(r) for r in M.rows]
    pivots: list[int] = []
    r = 0
    for c in range(M.ncols):
        if r == M.nrows:
            break
        p = next((i for i in range(r, M.nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        if pv != 1:
            A[r] = [x / pv for x in A[r]]
        for i in range(M.nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: Matrix) -> int:
    """Rank by fraction-free (Bareiss) elimination on the integer-scaled matrix."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    A = []
    for r in M.rows:
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        A.append([int(x * den) for x in r])
    m, n = M.nrows, M.ncols
    rk, prev = 0, 1
    for c in range(n):
        if rk == m:
            break
        p = next((i for i in range(rk, m) if A[i][c]), None)
        if p is None:
            continue
        A[rk], A[p] = A[p], A[rk]
        pv = A[rk][c]
        for i in range(rk + 1, m):
            a = A[i][c]
            A[i] = [(pv * x - a * y) // prev for x, y in zip(A[i], A[rk])]
        prev = pv
        rk += 1
    return rk


def nullspace(M: Matrix) -> Matrix:
    """Kernel basis as columns, each scaled to a primitive integer vector.

    Column order follows the free variables left to right, so the basis is
    deterministic for a given matrix.
    """
    A, pivots = rref(M)
    free = [c for c in range(M.ncols) if c not in set(pivots)]
    cols = []
    for f in free:
        v = [ZERO] * M.ncols
        v[f] = ONE
        for row, pc in zip(A, pivots):
            v[pc] = -row[f]
        cols.append(_primitive(v))
    return Matrix.from_columns(cols, M.ncols) if cols else Matrix.zeros(M.ncols, 0)


def column_basis(M: Matrix) -> Matrix:
    """Columns of M at the pivot positions (a basis of the image)."""
    _, pivots = rref(M)
    if not pivots:
        return Matrix.zeros(M.nrows, 0)
    return Matrix.from_columns([M.column(c) for c in pivots], M.nrows)


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise ValueError(f"matrix is not square (shape = {M.shape})")
    n = M.nrows
    if n == 0:
        return M
    aug = Matrix([list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(M.rows)])
    A, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix([row[n:] for row in A], n)


def solve(M: Matrix, B: Matrix) -> Matrix:
    """Exact X with M X = B for square invertible M."""
    return inverse(M) @ B


def is_spd(G: Matrix) -> bool:
    """Symmetric positive-definite test via leading principal minors (exact)."""
    if not G.is_square() or G != G.T():
        return False
    n = G.nrows
    # Gaussian elimination without pivoting: pivots are ratios of leading minors.
    A = [list(r) for r in G.rows]
    for k in range(n):
        if A[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return True


def det(M: Matrix) -> Fraction:
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    A = [list(r) for r in M.rows]
    sign = 1
    out = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        pv = A[c][c]
        out *= pv
        for i in range(c + 1, n):
            f = A[i][c] / pv
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return out * sign


def gram_projection(K: Matrix, G: Matrix) -> Matrix:
    """G-orthogonal projection onto the column span of K: K (K^T G K)^{-1} K^T G."""
    n = G.nrows
    if K.ncols == 0:
        return Matrix.zeros(n, n)
    KtG = K.T() @ G
    return K @ inverse(KtG @ K) @ KtG


def power(M: Matrix, e: int) -> Matrix:
    out = Matrix.identity(M.nrows)
    for _ in range(e):
        out = out @ M
    return out
