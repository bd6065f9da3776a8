"""Filtered nilpotent Lie algebras given by rational structure constants.

Basis vectors e_1..e_n are 1-based.  Brackets are stored sparsely for i < j:
``brackets[(i, j)] = {k: c}`` means [e_i, e_j] = sum_k c e_k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exterior import check_weights
from .linalg import Matrix, ONE, ZERO, as_fraction, gram_projection, inverse, is_spd, rank, nullspace

Vector = dict[int, Fraction]


def _clean(vec: Mapping[int, Fraction]) -> Vector:
    return {k: v for k, v in sorted(vec.items()) if v}


@dataclass(frozen=True)
class LieAlgebraSpec:
    name: str
    n: int
    weights: tuple[int, ...]
    brackets: Mapping[tuple[int, int], Mapping[int, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "weights", check_weights(self.n, self.weights))
        clean = {}
        for (i, j), vec in self.brackets.items():
            if not (1 <= i < j <= self.n):
                raise ValueError(f"bracket index pair ({i}, {j}) must satisfy 1 <= i < j <= {self.n}")
            v = _clean({int(k): as_fraction(c) for k, c in vec.items()})
            for k in v:
                if not 1 <= k <= self.n:
                    raise ValueError(f"bracket [e{i}, e{j}] has component e{k} outside 1..{self.n}")
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "brackets", dict(sorted(clean.items())))

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Structure constant c_{ij}^k with antisymmetry synthesized."""
        if i == j:
            return ZERO
        if i < j:
            return self.brackets.get((i, j), {}).get(k, ZERO)
        return -self.brackets.get((j, i), {}).get(k, ZERO)

    def bracket_basis(self, i: int, j: int) -> Vector:
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -v for k, v in self.brackets.get((j, i), {}).items()}

    def bracket(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
        out: dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket_basis(i, j).items():
                    out[k] = out.get(k, ZERO) + a * b * c
        return _clean(out)

    def layer(self, w: int) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.weights[i - 1] == w]

    @property
    def is_graded(self) -> bool:
        return not graded_violations(self)


@dataclass
class ValidationReport:
    jacobi: list[tuple[tuple[int, int, int], Vector]]
    filtration: list[tuple[tuple[int, int], int]]
    graded: bool

    @property
    def ok(self) -> bool:
        return not self.jacobi and not self.filtration

    def messages(self) -> list[str]:
        out = []
        for (a, b, c), res in self.jacobi:
            out.append(f"jacobi violation at (e{a}, e{b}, e{c}): residual {_fmt_vec(res)}")
        for (i, j), k in self.filtration:
            out.append(f"filtration violation: [e{i}, e{j}] has component e{k} of weight above the sum")
        return out


def _fmt_vec(v: Vector) -> str:
    return " + ".join(f"{c}*e{k}" for k, c in v.items()) or "0"


def jacobi_residual(spec: LieAlgebraSpec, a: int, b: int, c: int) -> Vector:
    """[e_a,[e_b,e_c]] - [e_b,[e_a,e_c]] + [e_c,[e_a,e_b]]  (zero iff Jacobi holds)."""
    ea, eb, ec = ({a: ONE}, {b: ONE}, {c: ONE})
    out: dict[int, Fraction] = {}
    for sign, x, y in ((1, ea, spec.bracket(eb, ec)), (-1, eb, spec.bracket(ea, ec)), (1, ec, spec.bracket(ea, eb))):
        for k, v in spec.bracket(x, y).items():
            out[k] = out.get(k, ZERO) + sign * v
    return _clean(out)


def graded_violations(spec: LieAlgebraSpec) -> list[tuple[tuple[int, int], int]]:
    w = spec.weights
    return [((i, j), k) for (i, j), vec in spec.brackets.items() for k in vec
            if w[k - 1] != w[i - 1] + w[j - 1]]


def validate(spec: LieAlgebraSpec) -> ValidationReport:
    w = spec.weights
    jac = []
    for a, b, c in combinations(range(1, spec.n + 1), 3):
        res = jacobi_residual(spec, a, b, c)
        if res:
            jac.append(((a, b, c), res))
    filt = [((i, j), k) for (i, j), vec in spec.brackets.items() for k in vec
            if w[k - 1] > w[i - 1] + w[j - 1]]
    return ValidationReport(jac, filt, not graded_violations(spec))


def require_valid(spec: LieAlgebraSpec) -> None:
    report = validate(spec)
    if not report.ok:
        raise ValueError(f"invalid Lie algebra {spec.name!r}: " + "; ".join(report.messages()))


def associated_graded(spec: LieAlgebraSpec) -> LieAlgebraSpec:
    require_valid(spec)
    w = spec.weights
    br = {(i, j): {k: c for k, c in vec.items() if w[k - 1] == w[i - 1] + w[j - 1]}
          for (i, j), vec in spec.brackets.items()}
    name = spec.name if spec.is_graded else f"gr({spec.name})"
    return LieAlgebraSpec(name, spec.n, w, br)


# ---------------------------------------------------------------------------
# catalog

_CATALOG: dict[str, tuple[int, tuple[int, ...], dict]] = {
    "heisenberg3": (3, (1, 1, 2), {(1, 2): {3: 1}}),
    "heisenberg5": (5, (1, 1, 1, 1, 2), {(1, 2): {5: 1}, (3, 4): {5: 1}}),
    "engel4": (4, (1, 1, 2, 2), {(1, 2): {3: 1}, (1, 3): {4: 1}}),
    "free_n633": (6, (1, 1, 1, 2, 2, 2), {(1, 2): {4: 1}, (1, 3): {5: 1}, (2, 3): {6: 1}}),
}

CATALOG_NAMES = tuple(_CATALOG)


def builtin(name: str) -> LieAlgebraSpec:
    try:
        n, w, br = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown builtin algebra {name!r}; choose from {', '.join(_CATALOG)}") from None
    return LieAlgebraSpec(name, n, w, br)


# ---------------------------------------------------------------------------
# frame changes


def check_frame_change(spec: LieAlgebraSpec, A: Matrix) -> None:
    if A.shape != (spec.n, spec.n):
        raise ValueError(f"frame change must be {spec.n}x{spec.n}")
    w = spec.weights
    for k, i, _ in A.nonzero_entries():
        if w[k] > w[i]:
            raise ValueError(f"frame change breaks the filtration: new e{i + 1} uses e{k + 1} of higher weight")
    if rank(A) < spec.n:
        raise ValueError("frame change is singular")


def change_frame(spec: LieAlgebraSpec, A: Matrix, name: str | None = None) -> LieAlgebraSpec:
    """Structure constants in the frame ê_i = sum_k A[k][i] e_k."""
    check_frame_change(spec, A)
    n = spec.n
    Ainv = inverse(A)
    br = {}
    for i, j in combinations(range(n), 2):
        old: dict[int, Fraction] = {}
        for a in range(n):
            if not A[a, i]:
                continue
            for b in range(n):
                if not A[b, j]:
                    continue
                for k, c in spec.bracket_basis(a + 1, b + 1).items():
                    old[k] = old.get(k, ZERO) + A[a, i] * A[b, j] * c
        new = {}
        for m in range(n):
            s = sum((Ainv[m, k - 1] * c for k, c in old.items()), ZERO)
            if s:
                new[m + 1] = s
        if new:
            br[(i + 1, j + 1)] = new
    out = LieAlgebraSpec(name or spec.name, n, spec.weights, br)
    require_valid(out)
    return out


def theta_hat_frame() -> Matrix:
    """Frame change for free_n633 dual to the coframe
    {th1, th2, th3, th4, th4 + th5, th5 + th6}."""
    B = Matrix.identity(6)
    rows = [list(r) for r in B.rows]
    rows[4][3] = ONE
    rows[5][4] = ONE
    return inverse(Matrix(rows))


# ---------------------------------------------------------------------------
# induced (osculating) metric


def _layer_map(spec: LieAlgebraSpec, j: int) -> tuple[list[tuple[int, ...]], Matrix]:
    """Matrix of (g_1)^{⊗j} -> g_j, (V_1..V_j) -> [V_1,[V_2,[...,V_j]]].

    Columns are indexed by j-tuples of layer-1 generators (lexicographic), rows
    by the layer-j basis vectors.
    """
    from itertools import product

    g1 = spec.layer(1)
    gj = spec.layer(j)
    words = list(product(g1, repeat=j))
    cols = []
    for word in words:
        v: Vector = {word[-1]: ONE}
        for g in reversed(word[:-1]):
            v = spec.bracket({g: ONE}, v)
        cols.append([v.get(k, ZERO) for k in gj])
    return words, Matrix.from_columns(cols, len(gj))


def _is_stratified(spec: LieAlgebraSpec) -> int | None:
    """First layer j >= 2 not spanned by [g_1, g_{j-1}], or None."""
    top = max(spec.weights)
    for j in range(2, top + 1):
        gj = spec.layer(j)
        if not gj:
            return j
        cols = []
        for a in spec.layer(1):
            for b in spec.layer(j - 1):
                v = spec.bracket({a: ONE}, {b: ONE})
                if any(spec.weights[k - 1] != j for k in v):
                    return j
                cols.append([v.get(k, ZERO) for k in gj])
        if rank(Matrix.from_columns(cols, len(gj)) if cols else Matrix.zeros(len(gj), 0)) < len(gj):
            return j
    return None


def _kron_power(G: Matrix, j: int) -> Matrix:
    out = Matrix([[ONE]])
    for _ in range(j):
        rows = []
        for ra in out.rows:
            for rb in G.rows:
                rows.append([a * b for a in ra for b in rb])
        out = Matrix(rows)
    return out


def induced_layer_gram(spec: LieAlgebraSpec, G1: Matrix) -> dict[int, Matrix]:
    """Scalar product on each layer pushed forward from the j-fold tensor power of G1.

    For the surjection S: (g_1)^{⊗j} -> g_j, a vector v in g_j has the unique
    preimage orthogonal to ker S; its squared norm defines <v, v>.  In matrix
    terms the layer Gram is (S H^{-1} S^T)^{-1} with H the tensor-power Gram.
    """
    if not spec.is_graded:
        raise ValueError("induced_layer_gram needs a graded algebra")
    g1 = spec.layer(1)
    if G1.shape != (len(g1), len(g1)) or not is_spd(G1):
        raise ValueError("G1 must be a symmetric positive-definite Gram on layer 1")
    bad = _is_stratified(spec)
    if bad is not None:
        raise ValueError(f"{spec.name} is not stratified: layer {bad} is not generated by brackets")
    out = {1: G1}
    for j in range(2, max(spec.weights) + 1):
        _, S = _layer_map(spec, j)
        H = _kron_power(G1, j)
        out[j] = inverse(S @ inverse(H) @ S.T())
    return out


def min_norm_preimage_sq(spec: LieAlgebraSpec, G1: Matrix, j: int, target: Vector) -> Fraction:
    """Squared norm of the minimal-norm preimage of `target` under the layer map.

    Independent route: kernel basis of S, then project any particular preimage
    orthogonally off the kernel.
    """
    words, S = _layer_map(spec, j)
    H = _kron_power(G1, j)
    gj = spec.layer(j)
    b = Matrix([[target.get(k, ZERO)] for k in gj])
    # particular solution from the pivot columns
    from .linalg import rref
    aug = Matrix([list(r) + [b[i, 0]] for i, r in enumerate(S.rows)])
    A, piv = rref(aug)
    if S.ncols in piv:
        raise ValueError("target not in the image")
    x = [ZERO] * S.ncols
    for row, pc in zip(A, piv):
        x[pc] = row[-1]
    X = Matrix([[v] for v in x])
    K = nullspace(S)
    X = X - gram_projection(K, H) @ X
    return (X.T() @ H @ X)[0, 0]


@dataclass
class CompatibilityResult:
    compatible: bool
    layer: int | None = None
    entry: tuple[int, int] | None = None
    got: Fraction | None = None
    induced: Fraction | None = None
    reason: str = ""


def is_compatible(spec: LieAlgebraSpec, G: Matrix) -> CompatibilityResult:
    """Does the metric G on g (vectors) agree with the metric induced from its layer-1 block?"""
    w = spec.weights
    n = spec.n
    if G.shape != (n, n) or not is_spd(G):
        raise ValueError("G must be symmetric positive-definite")
    for i, j, x in G.nonzero_entries():
        if w[i] != w[j]:
            raise ValueError(f"G is not block-diagonal across layers: entry ({i + 1},{j + 1}) = {x}")
    g1 = [i - 1 for i in spec.layer(1)]
    G1 = Matrix([[G[a, b] for b in g1] for a in g1])
    induced = induced_layer_gram(spec, G1)
    for j, Gj in sorted(induced.items()):
        idx = [i - 1 for i in spec.layer(j)]
        for p, a in enumerate(idx):
            for q, b in enumerate(idx):
                if G[a, b] != Gj[p, q]:
                    return CompatibilityResult(False, j, (a + 1, b + 1), G[a, b], Gj[p, q],
                                               f"layer {j}: G[{a + 1},{b + 1}] = {G[a, b]} != {Gj[p, q]}")
    return CompatibilityResult(True)


def random_step2_algebra(rng, n_max: int = 6, bound: int = 9, name: str = "random") -> LieAlgebraSpec:
    """Random step-2 algebra: brackets of the weight-1 generators land in a central span.

    Central vectors get weight 1 or 2 at random, so the result is often
    filtered but not graded.  Jacobi holds automatically because every
    bracket is central.  Coefficients are p/q with |p|, q <= bound.
    """
    n = rng.randint(2, n_max)
    g = n if n == 2 else rng.randint(2, n - 1)
    central_w = sorted(rng.choice((1, 2)) for _ in range(n - g))
    weights = (1,) * g + tuple(central_w)
    central = list(range(g + 1, n + 1))
    br = {}
    for i, j in combinations(range(1, g + 1), 2):
        vec = {}
        for k in central:
            if rng.random() < 0.6:
                vec[k] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if any(vec.values()):
            br[(i, j)] = vec
    return LieAlgebraSpec(name, n, weights, br)
