"""Exact projections: base box/kernel projection, partial inverse, P and Pi_F, L."""
from __future__ import annotations

from dataclasses import dataclass

from .calculus import (GramFamily, OperatorFamily, identity_family, increases_weight,
                       nilpotency_bound)
from .linalg import ONE, ZERO, Matrix, column_basis, gram_projection, hstack, inverse, nullspace, power, rank


def neumann_inverse(N: OperatorFamily) -> OperatorFamily:
    """(I - N)^{-1} = sum_{j < N0} N^j for a weight-increasing N."""
    ok, witness = increases_weight(N)
    if not ok:
        raise ValueError(f"Neumann series needs a weight-increasing operator; offending entry {witness}")
    if N.shift != 0:
        raise ValueError("Neumann series needs a degree-preserving operator")
    bounds = nilpotency_bound(N.basis.weights)

    def series(k, M):
        acc = Matrix.identity(M.nrows)
        term = Matrix.identity(M.nrows)
        for _ in range(bounds[k] - 1):
            term = term @ M
            acc = acc + term
        return acc

    return N.map_degrees(series)


def kernel_projection(T: OperatorFamily, G: GramFamily) -> OperatorFamily:
    """G-orthogonal projection onto ker T (degree-preserving T)."""
    return T.map_degrees(lambda k, M: gram_projection(nullspace(M), G[k]))


def base_box_and_projection(d0: OperatorFamily, delta0: OperatorFamily,
                            G: GramFamily) -> tuple[OperatorFamily, OperatorFamily]:
    if d0.shift != 1 or delta0.shift != -1:
        raise ValueError("expected a differential (+1) and a codifferential (-1)")
    box0 = d0 @ delta0 + delta0 @ d0
    return box0, kernel_projection(box0, G)


def partial_inverse(d0: OperatorFamily, G: GramFamily) -> OperatorFamily:
    """G-pseudo-inverse of d0: inverse on Im d0, zero on its G-orthogonal complement.

    With U a basis of (ker d0)^perp and W = d0 U (a basis of Im d0), the map on
    degree k+1 is U (W^T G W)^{-1} W^T G.
    """
    b = d0.basis
    mats = [Matrix.zeros(0, b.dim(0))]
    for j in range(1, b.n + 1):
        M = d0[j - 1]
        U = column_basis(Matrix.identity(M.ncols) - gram_projection(nullspace(M), G[j - 1]))
        if U.ncols == 0:
            mats.append(Matrix.zeros(M.ncols, M.nrows))
            continue
        W = M @ U
        WtG = W.T() @ G[j]
        mats.append(U @ inverse(WtG @ W) @ WtG)
    return OperatorFamily(b, -1, tuple(mats))


def rumin_projection(d: OperatorFamily, d0: OperatorFamily, d0inv: OperatorFamily):
    """b, b1 and Pi_F = (I-b)^{-1} d0inv d + d (I-b)^{-1} d0inv."""
    delta = d - d0
    ok, w = increases_weight(delta)
    if not ok:
        raise ValueError(f"d - d0 must increase weight; offending entry {w}")
    b = -(d0inv @ delta)
    b1 = -(delta @ d0inv)
    inv_b = neumann_inverse(b)
    PiF = inv_b @ d0inv @ d + d @ inv_b @ d0inv
    return b, b1, PiF


def generalized_kernel_projection(box: OperatorFamily) -> OperatorFamily:
    """Projection onto ker box^{N0} along Im box^{N0}, N0 per degree."""
    bounds = nilpotency_bound(box.basis.weights)

    def proj(k, M):
        B = power(M, bounds[k])
        K = nullspace(B)
        R = column_basis(B)
        n = M.nrows
        if K.ncols + R.ncols != n:
            raise ValueError(f"degree {k}: ker and Im of box^{bounds[k]} do not split the space")
        if R.ncols == 0:
            return Matrix.identity(n)
        if K.ncols == 0:
            return Matrix.zeros(n, n)
        basis = hstack([K, R], n)
        if rank(basis) < n:
            raise ValueError(f"degree {k}: ker and Im of box^{bounds[k]} intersect")
        sel = Matrix.diag([ONE if i < K.ncols else ZERO for i in range(n)])
        return basis @ sel @ inverse(basis)

    return box.map_degrees(proj)


def build_L(P: OperatorFamily, Pi0: OperatorFamily) -> tuple[OperatorFamily, OperatorFamily]:
    I = identity_family(P.basis)
    L = P @ Pi0 + (I - P) @ (I - Pi0)
    N = I - L
    ok, w = increases_weight(N)
    if not ok:
        raise ValueError(f"gr(L) != I: {w}")
    return L, neumann_inverse(N)


@dataclass(frozen=True)
class ProjectionBundle:
    box0: OperatorFamily
    Pi0: OperatorFamily
    d0inv: OperatorFamily
    box: OperatorFamily
    P: OperatorFamily
    PiF: OperatorFamily
    b: OperatorFamily
    b1: OperatorFamily
    L: OperatorFamily
    Linv: OperatorFamily


def build_projections(d: OperatorFamily, d0: OperatorFamily, delta0: OperatorFamily,
                      G: GramFamily) -> ProjectionBundle:
    box0, Pi0 = base_box_and_projection(d0, delta0, G)
    d0inv = partial_inverse(d0, G)
    box = d @ delta0 + delta0 @ d
    P = generalized_kernel_projection(box)
    b, b1, PiF = rumin_projection(d, d0, d0inv)
    L, Linv = build_L(P, Pi0)
    return ProjectionBundle(box0, Pi0, d0inv, box, P, PiF, b, b1, L, Linv)
