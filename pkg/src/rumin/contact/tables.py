"""Symbolic d, d0, box, P, L and D for the 3D contact frame.

Degree-k matrices are written in the bases

    k=1: X*, Y*, T*         (weights 1, 1, 2)
    k=2: X*^Y*, X*^T*, Y*^T* (weights 2, 3, 3)

with rows indexing the target and columns the source, so a matrix entry is
the operator applied to the coefficient function of the source form.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..calculus import leibniz_extension
from ..exterior import enumerate_basis, wedge_indices
from ..linalg import Matrix
from .ring import (C0_INV, C0_INV_OP, GENERATORS, ONE_OP, ZERO_OP, CoefPoly, NCOperator, T, X, Y, c,
                   cop)

BASIS = enumerate_basis(3, (1, 1, 2))
_GEN_OPS = {1: X, 2: Y, 3: T}


@dataclass(frozen=True)
class SymbolicMatrix:
    """Operator-valued matrix Lambda^source -> Lambda^target."""
    name: str
    source: int
    target: int
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (BASIS.dim(self.target), BASIS.dim(self.source)):
            raise ValueError(f"{self.name}: shape {self.matrix.shape} does not fit "
                             f"degree {self.source} -> {self.target}")

    def __getitem__(self, ij):
        return self.matrix[ij]

    def text(self) -> str:
        return matrix_text(self.matrix)

    def line(self) -> str:
        return f"{self.name} = {self.text()}"


def op_matrix(rows) -> Matrix:
    return Matrix([[_op(x) for x in r] for r in rows], zero=ZERO_OP)


def _op(x) -> NCOperator:
    if isinstance(x, NCOperator):
        return x
    return NCOperator.coef(x)


def op_identity(n: int) -> Matrix:
    return Matrix.identity(n, zero=ZERO_OP, one=ONE_OP)


def op_diag(entries) -> Matrix:
    return Matrix.diag([_op(x) for x in entries], zero=ZERO_OP)


def matrix_text(M: Matrix) -> str:
    """diag(...) for square diagonal matrices, (...) for a single row, [(...), ...] otherwise."""
    if M.is_square() and M.nrows > 1 and all(not M[i, j] for i in range(M.nrows)
                                             for j in range(M.ncols) if i != j):
        return "diag(" + ", ".join(M[i, i].text() for i in range(M.nrows)) + ")"
    rows = ["(" + ", ".join(x.text() for x in r) + ")" for r in M.rows]
    return rows[0] if len(rows) == 1 else "[" + ", ".join(rows) + "]"


# ---------------------------------------------------------------------------
# differentials

# [e_i, e_j] = sum_k coeff e_k for the frame (e1, e2, e3) = (X, Y, T)
def frame_brackets() -> dict[tuple[int, int], dict[int, CoefPoly]]:
    return {
        (1, 2): {1: c(1), 2: c(2), 3: c(0)},
        (1, 3): {1: c(3), 2: c(4)},
        (2, 3): {1: c(5), 2: c(6)},
    }


def _algebraic(brackets) -> list[Matrix]:
    d1 = {k: {} for k in range(1, 4)}
    for pair, vec in brackets.items():
        for k, f in vec.items():
            d1[k][pair] = -NCOperator.coef(f)
    return leibniz_extension(BASIS, d1, zero=ZERO_OP)


def algebraic_differential() -> list[Matrix]:
    """d~: the bracket part of d, C^infinity-linear."""
    return _algebraic(frame_brackets())


def graded_differential() -> list[Matrix]:
    """d_gM: only the weight-additive bracket [X, Y] = c0 T survives."""
    return _algebraic({(1, 2): {3: c(0)}})


def vector_field_part() -> list[Matrix]:
    """f theta^I -> sum_V V(f) theta^V ^ theta^I."""
    mats = []
    for k in range(4):
        src, tgt = BASIS.degree(k), BASIS.degree(k + 1)
        rows = [[ZERO_OP] * len(src) for _ in tgt]
        for col, I in enumerate(src):
            for v in (1, 2, 3):
                s, K = wedge_indices((v,), I)
                if s:
                    r = BASIS.index(K)
                    rows[r][col] = rows[r][col] + (_GEN_OPS[v] if s > 0 else -_GEN_OPS[v])
        mats.append(Matrix(rows, len(src), ZERO_OP))
    return mats


def de_rham_differential() -> list[Matrix]:
    return [a + b for a, b in zip(vector_field_part(), algebraic_differential())]


def transpose_family(mats: list[Matrix]) -> list[Matrix]:
    """Plain transpose, degree k+1 -> k; valid for C^infinity-linear maps in an orthonormal coframe."""
    out = [Matrix.zeros(0, 1, ZERO_OP)]
    out += [mats[k].T() for k in range(3)]
    return out


def compose(A: list[Matrix], B: list[Matrix], shift_b: int) -> list[Matrix]:
    """(A ∘ B) per source degree; B has degree shift `shift_b`."""
    out = []
    for k in range(4):
        mid = k + shift_b
        out.append(A[mid] @ B[k] if 0 <= mid <= 3 else None)
    return out


def _laplacian(d: list[Matrix], dt: list[Matrix]) -> list[Matrix]:
    out = []
    for k in range(4):
        M = Matrix.zeros(BASIS.dim(k), BASIS.dim(k), ZERO_OP)
        if k >= 1:
            M = M + d[k - 1] @ dt[k]
        if k <= 2:
            M = M + dt[k + 1] @ d[k]
        out.append(M)
    return out


def _diagonal_entries(M: Matrix) -> list[NCOperator]:
    for i, j, x in M.nonzero_entries():
        if i != j:
            raise ValueError("base Laplacian expected to be diagonal in the canonical basis")
    return [M[i, i] for i in range(M.nrows)]


def base_projections(box0: list[Matrix]) -> tuple[list[Matrix], list[Matrix]]:
    """Pi0 (zero diagonal positions) and pr_{c0^2} (positions equal to c0^2)."""
    c0sq = NCOperator.coef(c(0) * c(0))
    Pi0, pr = [], []
    for M in box0:
        diag = _diagonal_entries(M)
        for x in diag:
            if x and x != c0sq:
                raise ValueError(f"unexpected base Laplacian eigenvalue {x.text()}")
        Pi0.append(op_diag([ONE_OP if not x else ZERO_OP for x in diag]))
        pr.append(op_diag([ONE_OP if x else ZERO_OP for x in diag]))
    return Pi0, pr


def residue_projection(box0, box, Pi0, pr) -> list[Matrix]:
    """P = Pi0 + Pi0 (box0 - box) c0^-2 pr + c0^-2 pr (box0 - box) Pi0."""
    c0m2 = NCOperator.coef(C0_INV * C0_INV)
    out = []
    for k in range(4):
        delta = box0[k] - box[k]
        scaled_pr = pr[k].scale(c0m2)
        out.append(Pi0[k] + Pi0[k] @ delta @ scaled_pr + scaled_pr @ delta @ Pi0[k])
    return out


def conjugator(P, Pi0) -> tuple[list[Matrix], list[Matrix]]:
    """L = I + (P - Pi0)(-I + 2 Pi0) and its inverse by the terminating series."""
    L, Linv = [], []
    for k in range(4):
        n = BASIS.dim(k)
        I = op_identity(n)
        Lk = I + (P[k] - Pi0[k]) @ (Pi0[k] + Pi0[k] - I)
        N = I - Lk
        acc, term = I, I
        for _ in range(4):
            term = term @ N
            if term.is_zero():
                break
            acc = acc + term
        else:
            raise ValueError(f"I - L not nilpotent in degree {k}")
        L.append(Lk)
        Linv.append(acc)
    return L, Linv


def rumin_differential(top, Linv, L, Pi0) -> list[Matrix]:
    """D^(k) = L^{(k+1) -1} top^(k) L^(k) Pi0^(k), k = 0..2."""
    return [Linv[k + 1] @ top[k] @ L[k] @ Pi0[k] for k in range(3)]


@dataclass(frozen=True)
class ContactPipeline:
    d: list
    dtilde: list
    dgM: list
    d0: list
    d0t: list
    box0: list
    Pi0: list
    pr: list
    box: list
    P: list
    L: list
    Linv: list
    D: list
    boxt: list
    Pt: list
    Lt: list
    Ltinv: list
    Dt: list
    Dt_printed: list    # tilde chain conjugated by L^-1 instead of L~^-1


def run_pipeline() -> ContactPipeline:
    dtilde = algebraic_differential()
    d = de_rham_differential()
    dgM = graded_differential()
    d0 = dgM
    d0t = transpose_family(d0)
    box0 = _laplacian(d0, d0t)
    Pi0, pr = base_projections(box0)
    box = _laplacian(d, d0t)
    P = residue_projection(box0, box, Pi0, pr)
    L, Linv = conjugator(P, Pi0)
    D = rumin_differential(d, Linv, L, Pi0)
    boxt = _laplacian(dtilde, d0t)
    Pt = residue_projection(box0, boxt, Pi0, pr)
    Lt, Ltinv = conjugator(Pt, Pi0)
    Dt = rumin_differential(dtilde, Ltinv, Lt, Pi0)
    Dt_printed = [Linv[k + 1] @ dtilde[k] @ Lt[k] @ Pi0[k] for k in range(3)]
    return ContactPipeline(d, dtilde, dgM, d0, d0t, box0, Pi0, pr, box, P, L, Linv, D,
                           boxt, Pt, Lt, Ltinv, Dt, Dt_printed)


# (label, pipeline attribute, index, source degree, target degree)
TABLE_LAYOUT = [
    ("dtilde(1)", "dtilde", 1, 1, 2), ("dtilde(2)", "dtilde", 2, 2, 3),
    ("d(0)", "d", 0, 0, 1), ("d(1)", "d", 1, 1, 2), ("d(2)", "d", 2, 2, 3),
    ("dgM(1)", "dgM", 1, 1, 2),
    ("d0(1)", "d0", 1, 1, 2), ("d0t(1)", "d0t", 2, 2, 1),
    ("Box0(1)", "box0", 1, 1, 1), ("Box0(2)", "box0", 2, 2, 2),
    ("Pi0(1)", "Pi0", 1, 1, 1), ("Pi0(2)", "Pi0", 2, 2, 2),
    ("Box(1)", "box", 1, 1, 1), ("Box(2)", "box", 2, 2, 2),
    ("P(1)", "P", 1, 1, 1), ("P(2)", "P", 2, 2, 2),
    ("L(1)", "L", 1, 1, 1), ("L(2)", "L", 2, 2, 2),
    ("D(0)", "D", 0, 0, 1), ("D(1)", "D", 1, 1, 2), ("D(2)", "D", 2, 2, 3),
    ("Boxt(1)", "boxt", 1, 1, 1), ("Boxt(2)", "boxt", 2, 2, 2),
    ("Pt(1)", "Pt", 1, 1, 1), ("Pt(2)", "Pt", 2, 2, 2),
    ("Lt(1)", "Lt", 1, 1, 1), ("Lt(2)", "Lt", 2, 2, 2),
    ("Dt(0)", "Dt", 0, 0, 1), ("Dt(1)", "Dt", 1, 1, 2), ("Dt(2)", "Dt", 2, 2, 3),
]


def contact_tables(pipeline: ContactPipeline | None = None) -> dict[str, SymbolicMatrix]:
    p = pipeline or run_pipeline()
    return {label: SymbolicMatrix(label, src, tgt, getattr(p, attr)[idx])
            for label, attr, idx, src, tgt in TABLE_LAYOUT}


def emit_lines(tables: dict[str, SymbolicMatrix] | None = None) -> list[str]:
    tables = tables or contact_tables()
    return [t.line() for t in tables.values()]


# ---------------------------------------------------------------------------
# gr and transposes


def entry_weight_shift(src_deg: int, tgt_deg: int, i: int, j: int) -> int:
    return BASIS.weight(BASIS.degree(tgt_deg)[i]) - BASIS.weight(BASIS.degree(src_deg)[j])


def gr_of_symbolic(op: SymbolicMatrix) -> SymbolicMatrix:
    """Weight-preserving, order-zero part of every entry."""
    rows = []
    for i, r in enumerate(op.matrix.rows):
        row = []
        for j, x in enumerate(r):
            keep = entry_weight_shift(op.source, op.target, i, j) == 0
            row.append(NCOperator.coef(x.zeroth_order()) if keep else ZERO_OP)
        rows.append(row)
    return SymbolicMatrix(f"gr({op.name})", op.source, op.target, Matrix(rows, op.matrix.ncols, ZERO_OP))


def star_matrix(k: int) -> Matrix:
    """Hodge star Lambda^k -> Lambda^{3-k} for the orthonormal coframe X*, Y*, T*."""
    from ..exterior import hodge_star_matrix
    return hodge_star_matrix(k, BASIS).map(lambda x: NCOperator.coef(x), zero=ZERO_OP)


def formal_transpose(d: list[Matrix], k: int) -> Matrix:
    """d^t = (-1)^{3k+1} * d * : Lambda^{k+1} -> Lambda^k."""
    sign = -1 if (3 * k + 1) % 2 else 1
    M = star_matrix(2 - k) @ d[2 - k] @ star_matrix(k + 1)
    return M if sign > 0 else -M


@dataclass(frozen=True)
class FiltrationDrop:
    degree: int
    source: tuple
    target: tuple
    entry: str
    shift: int


def first_weight_drop(M: Matrix, src_deg: int, tgt_deg: int) -> FiltrationDrop | None:
    """First nonzero entry mapping into a strictly lower weight, if any."""
    for i, j, x in M.nonzero_entries():
        shift = entry_weight_shift(src_deg, tgt_deg, i, j)
        if shift < 0:
            return FiltrationDrop(src_deg, BASIS.degree(src_deg)[j], BASIS.degree(tgt_deg)[i], x.text(), shift)
    return None


__all__ = [
    "BASIS", "SymbolicMatrix", "ContactPipeline", "run_pipeline", "contact_tables", "emit_lines",
    "gr_of_symbolic", "formal_transpose", "first_weight_drop", "op_matrix", "op_identity", "op_diag",
    "matrix_text", "GENERATORS",
]
