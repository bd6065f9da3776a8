"""Assemble (E0, D), (F0, C), d_c, the conjugator g and the homotopy h.

Every identity the construction relies on is re-checked exactly and recorded
in the report ledger; a failing entry means a bug, not an expected state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .calculus import (GramFamily, OperatorFamily, adjoint, base_differential, ce_differential,
                       check_weight_orthogonal, gr_part, gram_family, identity_family, identity_gram,
                       increases_weight, zero_family)
from .exterior import enumerate_basis
from .lie import LieAlgebraSpec, associated_graded, require_valid
from .linalg import Matrix, column_basis, hstack, inverse, nullspace, rank
from .projections import ProjectionBundle, build_projections, neumann_inverse

DIFFERENTIALS = ("full", "algebraic")


@dataclass(frozen=True)
class LedgerEntry:
    ok: bool
    witness: str = ""


@dataclass
class SubcomplexReport:
    name: str
    gram_fingerprint: str
    differential: str
    dims_E0: list[int]
    dims_F0: list[int]
    E0_bases: list[Matrix]
    F0_bases: list[Matrix]
    D_E0: list[Matrix]
    C_F0: list[Matrix]
    betti: list[int]
    oracle_betti: list[int]
    ledger: dict[str, LedgerEntry]
    ops: dict[str, OperatorFamily] = field(repr=False)
    bundle: ProjectionBundle = field(repr=False)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.ledger.values())

    def first_failure(self) -> tuple[str, LedgerEntry] | None:
        return next(((k, e) for k, e in self.ledger.items() if not e.ok), None)


def top_differential(spec: LieAlgebraSpec, kind: str = "full") -> OperatorFamily:
    """d or its algebraic part; at constant coefficients the two coincide."""
    if kind not in DIFFERENTIALS:
        raise ValueError(f"differential must be one of {DIFFERENTIALS}")
    return ce_differential(spec)


def ce_cohomology_oracle(spec: LieAlgebraSpec) -> list[int]:
    """b_k = C(n,k) - rank d_k - rank d_{k-1}, straight from the CE differential."""
    d = ce_differential(spec)
    n = spec.n
    ranks = [rank(d[k]) for k in range(n + 1)]
    return [comb(n, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


def betti_from_differential(dims: list[int], mats: list[Matrix]) -> list[int]:
    ranks = [rank(M) for M in mats]
    return [dims[k] - ranks[k] - (ranks[k - 1] if k else 0) for k in range(len(dims))]


def _coords(K: Matrix, G: Matrix) -> Matrix:
    """Coordinates in the columns of K of the G-orthogonal projection onto span K."""
    if K.ncols == 0:
        return Matrix.zeros(0, G.nrows)
    KtG = K.T() @ G
    return inverse(KtG @ K) @ KtG


def _check(ledger: dict, name: str, lhs: OperatorFamily, rhs: OperatorFamily) -> None:
    diff = lhs.first_difference(rhs)
    ledger[name] = LedgerEntry(diff is None, "" if diff is None else _fmt_diff(diff))


def _fmt_diff(diff) -> str:
    if diff[0] == "shift":
        return f"degree shifts differ: {diff[1]} vs {diff[2]}"
    k, i, j, a, b = diff
    return f"degree {k}, entry ({i},{j}): {a} != {b}"


def _resolve_gram(spec: LieAlgebraSpec, G) -> GramFamily:
    basis = enumerate_basis(spec.n, spec.weights)
    if G is None:
        return identity_gram(basis)
    if isinstance(G, GramFamily):
        return G
    check_weight_orthogonal(G, spec.weights)
    return gram_family(G, basis)


def build_subcomplex(spec: LieAlgebraSpec, G=None, differential: str = "full") -> SubcomplexReport:
    """Run the whole construction for a Lie algebra and a degree-1 Gram on covectors.

    `G` is None (identity), a degree-1 Gram `Matrix`, or a `GramFamily`.
    """
    require_valid(spec)
    Gf = _resolve_gram(spec, G)
    basis = Gf.basis
    n = spec.n
    I = identity_family(basis)

    d = top_differential(spec, differential)
    d0 = base_differential(spec)
    delta0 = adjoint(d0, Gf)
    bundle = build_projections(d, d0, delta0, Gf)
    Pi0, P, PiF, L, Linv = bundle.Pi0, bundle.P, bundle.PiF, bundle.L, bundle.Linv
    box0, d0inv, b, b1 = bundle.box0, bundle.d0inv, bundle.b, bundle.b1
    Q0 = I - Pi0
    PiE = I - PiF

    conj = Linv @ d @ L
    D = conj @ Pi0
    C = conj @ Q0
    d_c = Pi0 @ d @ PiE @ Pi0

    # E0 and F0 coordinates
    E0 = [nullspace(box0[k]) for k in range(n + 1)]
    F0 = [column_basis(box0[k]) for k in range(n + 1)]
    D_E0 = [_coords(E0[k + 1], Gf[k + 1]) @ D[k] @ E0[k] if k < n else Matrix.zeros(0, E0[n].ncols)
            for k in range(n + 1)]
    C_F0 = [_coords(F0[k + 1], Gf[k + 1]) @ C[k] @ F0[k] if k < n else Matrix.zeros(0, F0[n].ncols)
            for k in range(n + 1)]
    dims_E0 = [K.ncols for K in E0]
    dims_F0 = [K.ncols for K in F0]

    # conjugator and homotopy
    box0_plus = Pi0.map_degrees(lambda k, M: inverse(box0[k] + M) - M)
    g = (C @ delta0 @ box0_plus + delta0 @ box0_plus @ d0) @ Q0
    g_ext = g + Pi0
    ginv = neumann_inverse(I - g_ext) - Pi0
    h = L @ g @ delta0 @ box0_plus @ ginv @ Q0 @ Linv

    ledger: dict[str, LedgerEntry] = {}
    z1, zm1 = zero_family(basis, 1), zero_family(basis, -1)
    z0, z2 = zero_family(basis, 0), zero_family(basis, 2)
    _check(ledger, "d^2 = 0", d @ d, z2)
    _check(ledger, "d0^2 = 0", d0 @ d0, z2)
    _check(ledger, "gr(d) = d0", gr_part(d), d0)
    ok, w = increases_weight(d - d0)
    ledger["d - d0 increases weight"] = LedgerEntry(ok, "" if ok else str(w))
    _check(ledger, "Pi0^2 = Pi0", Pi0 @ Pi0, Pi0)
    _check(ledger, "Pi0 = I - d0inv d0 - d0 d0inv", I - d0inv @ d0 - d0 @ d0inv, Pi0)
    _check(ledger, "d0inv^2 = 0", d0inv @ d0inv, zero_family(basis, -2))
    _check(ledger, "d0 Pi0 = 0", d0 @ Pi0, z1)
    _check(ledger, "Pi0 delta0 = 0", Pi0 @ delta0, zm1)
    _check(ledger, "P^2 = P", P @ P, P)
    _check(ledger, "P d = d P", P @ d, d @ P)
    _check(ledger, "P box = box P", P @ bundle.box, bundle.box @ P)
    _check(ledger, "P delta0 = 0", P @ delta0, zm1)
    _check(ledger, "delta0 P = 0", delta0 @ P, zm1)
    _check(ledger, "PiF^2 = PiF", PiF @ PiF, PiF)
    _check(ledger, "P + PiF = I", P + PiF, I)
    _check(ledger, "b d0inv = d0inv b1", b @ d0inv, d0inv @ b1)
    _check(ledger, "(I-b)^-1 d0inv = d0inv (I-b1)^-1", neumann_inverse(b) @ d0inv, d0inv @ neumann_inverse(b1))
    _check(ledger, "L Linv = I", L @ Linv, I)
    _check(ledger, "Linv L = I", Linv @ L, I)
    _check(ledger, "P L = P Pi0", P @ L, P @ Pi0)
    _check(ledger, "L Pi0 = P Pi0", L @ Pi0, P @ Pi0)
    _check(ledger, "P = L Pi0 Linv", L @ Pi0 @ Linv, P)
    _check(ledger, "Linv d L = D + C", conj, D + C)
    _check(ledger, "D = Pi0 D", Pi0 @ D, D)
    _check(ledger, "C = (I-Pi0) C", Q0 @ C, C)
    _check(ledger, "D^2 = 0", D @ D, z2)
    _check(ledger, "C^2 = 0", C @ C, z2)
    _check(ledger, "D C = 0", D @ C, z2)
    _check(ledger, "C D = 0", C @ D, z2)
    _check(ledger, "d_c = D", d_c, D)
    _check(ledger, "d_c^2 = 0", d_c @ d_c, z2)
    _check(ledger, "PiE = PiE Pi0 PiE", PiE @ Pi0 @ PiE, PiE)
    _check(ledger, "Pi0 PiE Pi0 = Pi0", Pi0 @ PiE @ Pi0, Pi0)
    _check(ledger, "Pi0 Linv d = D Pi0 Linv", Pi0 @ Linv @ d, D @ Pi0 @ Linv)
    _check(ledger, "C g = g d0 on F0", C @ g, g @ d0 @ Q0)
    _check(ledger, "g ginv = I on F0", g @ ginv, Q0)
    _check(ledger, "I - L Pi0 Linv = d h + h d", I - L @ Pi0 @ Linv, d @ h + h @ d)

    betti = betti_from_differential(dims_E0, D_E0)
    oracle = ce_cohomology_oracle(spec)
    ledger["Betti(E0, D) = CE oracle"] = LedgerEntry(betti == oracle, f"{betti} vs {oracle}")
    f_betti = betti_from_differential(dims_F0, C_F0)
    ledger["(F0, C) acyclic"] = LedgerEntry(not any(f_betti), f"cohomology dims {f_betti}")
    ledger["dim E0 + dim F0 = C(n,k)"] = LedgerEntry(
        all(a + b_ == comb(n, k) for k, (a, b_) in enumerate(zip(dims_E0, dims_F0))), f"{dims_E0} + {dims_F0}")
    graded_betti = ce_cohomology_oracle(associated_graded(spec))
    ledger["dim E0 = dim ker box_gM"] = LedgerEntry(dims_E0 == graded_betti, f"{dims_E0} vs {graded_betti}")
    rP = [rank(P[k]) for k in range(n + 1)]
    ledger["rank P = rank Pi0"] = LedgerEntry(rP == dims_E0, f"{rP} vs {dims_E0}")

    ops = dict(d=d, d0=d0, delta0=delta0, D=D, C=C, d_c=d_c, g=g, ginv=ginv, h=h, PiE=PiE)
    return SubcomplexReport(spec.name, Gf.fingerprint(), differential, dims_E0, dims_F0, E0, F0,
                            D_E0, C_F0, betti, oracle, ledger, ops, bundle)


def betti_of_subcomplex(report: SubcomplexReport) -> list[int]:
    if not report.ok:
        name, entry = report.first_failure()
        raise ValueError(f"ledger failure {name!r}: {entry.witness}")
    if report.betti != report.oracle_betti:
        raise AssertionError(f"Betti mismatch {report.betti} vs oracle {report.oracle_betti}")
    return report.betti


@dataclass
class ComparisonResult:
    equal: bool
    degree: int | None = None
    witness: tuple | None = None
    side: str = ""
    differing_degrees: list[int] = field(default_factory=list)

    def describe(self) -> str:
        if self.equal:
            return "E0 subspaces coincide in every degree"
        vec = ", ".join(str(x) for x in self.witness)
        return (f"E0 differs in degree {self.degree}: ({vec}) lies in E0_{self.side} only; "
                f"differing degrees {self.differing_degrees}")


def _in_span(K: Matrix, v) -> bool:
    return rank(hstack([K, Matrix.from_columns([v], K.nrows)], K.nrows)) == rank(K)


def _span_witness(Ka: Matrix, Kb: Matrix):
    for src, other, side in ((Ka, Kb, "a"), (Kb, Ka, "b")):
        for v in src.columns():
            if not _in_span(other, v):
                return v, side
    return None


def e0_span_differs(ra: SubcomplexReport, rb: SubcomplexReport, k: int) -> bool:
    return _span_witness(ra.E0_bases[k], rb.E0_bases[k]) is not None


def compare_e0(spec: LieAlgebraSpec, G_a=None, G_b=None) -> ComparisonResult:
    """Compare the E0 subspaces of two metrics degree by degree; witness from the lowest differing degree."""
    ra = build_subcomplex(spec, G_a)
    rb = build_subcomplex(spec, G_b)
    first = None
    degrees = []
    for k, (Ka, Kb) in enumerate(zip(ra.E0_bases, rb.E0_bases)):
        w = _span_witness(Ka, Kb)
        if w is not None:
            degrees.append(k)
            if first is None:
                first = (k,) + w
    if first is None:
        return ComparisonResult(True)
    k, v, side = first
    return ComparisonResult(False, k, v, side, degrees)
