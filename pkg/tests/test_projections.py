from fractions import Fraction

import pytest

from rumin.calculus import (OperatorFamily, adjoint, base_differential, ce_differential, identity_family,
                            identity_gram, zero_family)
from rumin.exterior import enumerate_basis
from rumin.lie import LieAlgebraSpec, builtin
from rumin.linalg import Matrix, rank
from rumin.projections import (base_box_and_projection, build_projections, neumann_inverse, partial_inverse,
                               rumin_projection)


def _setup(name):
    spec = builtin(name)
    d = ce_differential(spec)
    d0 = base_differential(spec)
    G = identity_gram(d.basis)
    return d, d0, adjoint(d0, G), G


def test_heisenberg_box0_and_pi0():
    d, d0, delta0, G = _setup("heisenberg3")
    box0, Pi0 = base_box_and_projection(d0, delta0, G)
    one, zero = Fraction(1), Fraction(0)
    assert box0[1] == Matrix.diag([zero, zero, one])
    assert Pi0[1] == Matrix.diag([one, one, zero])
    assert Pi0[2] == Matrix.diag([zero, one, one])
    for k in (0, 3):
        assert box0[k].is_zero() and Pi0[k] == Matrix.identity(1)


def test_heisenberg_partial_inverse():
    d, d0, delta0, G = _setup("heisenberg3")
    inv = partial_inverse(d0, G)
    assert [list(c) for c in inv[2].columns()] == [[0, 0, -1], [0, 0, 0], [0, 0, 0]]
    assert (inv @ inv).is_zero()


@pytest.mark.parametrize("name", ["engel4", "free_n633", "heisenberg5"])
def test_pi0_from_partial_inverse(name):
    d, d0, delta0, G = _setup(name)
    _, Pi0 = base_box_and_projection(d0, delta0, G)
    inv = partial_inverse(d0, G)
    I = identity_family(d.basis)
    assert (I - inv @ d0 - d0 @ inv).first_difference(Pi0) is None
    assert (inv @ inv).is_zero()


def test_neumann_examples():
    b = enumerate_basis(3, (1, 1, 2))
    Z = zero_family(b, 0)
    assert neumann_inverse(Z).first_difference(identity_family(b)) is None
    mats = [Matrix.zeros(b.dim(k), b.dim(k)) for k in range(4)]
    rows = [[Fraction(0)] * 3 for _ in range(3)]
    rows[2][0] = Fraction(5)       # theta1 (weight 1) -> theta3 (weight 2)
    mats[1] = Matrix(rows)
    N = OperatorFamily(b, 0, tuple(mats))
    assert neumann_inverse(N).first_difference(identity_family(b) + N) is None


def test_neumann_rejects_non_increasing():
    b = enumerate_basis(2, (1, 1))
    with pytest.raises(ValueError):
        neumann_inverse(identity_family(b))


def test_engel_rumin_projection_identities():
    d, d0, delta0, G = _setup("engel4")
    inv = partial_inverse(d0, G)
    b, b1, PiF = rumin_projection(d, d0, inv)
    I = identity_family(d.basis)
    assert (neumann_inverse(b) @ (I - b)).first_difference(I) is None
    assert (PiF @ PiF).first_difference(PiF) is None
    assert (neumann_inverse(b) @ inv).first_difference(inv @ neumann_inverse(b1)) is None


def test_heisenberg_projection_bundle():
    d, d0, delta0, G = _setup("heisenberg3")
    pb = build_projections(d, d0, delta0, G)
    I = identity_family(d.basis)
    assert pb.b.is_zero()
    assert pb.PiF.first_difference(I - pb.Pi0) is None
    assert pb.box.first_difference(pb.box0) is None
    assert pb.P.first_difference(pb.Pi0) is None
    assert pb.L.first_difference(I) is None


def test_engel_box_equals_box0():
    # with the identity Gram every correction term (d - d0) delta0 + delta0 (d - d0) vanishes
    d, d0, delta0, G = _setup("engel4")
    pb = build_projections(d, d0, delta0, G)
    assert pb.box.first_difference(pb.box0) is None
    assert pb.P.first_difference(pb.Pi0) is None
    I = identity_family(d.basis)
    assert (pb.L @ pb.Linv).first_difference(I) is None


def test_filtered_heisenberg_P_differs_from_pi0_with_equal_rank():
    spec = LieAlgebraSpec("filtered", 3, (1, 1, 2), {(1, 2): {3: 1, 1: 1}})
    d, d0 = ce_differential(spec), base_differential(spec)
    G = identity_gram(d.basis)
    pb = build_projections(d, d0, adjoint(d0, G), G)
    assert pb.P[1] != pb.Pi0[1]
    assert rank(pb.P[1]) == rank(pb.Pi0[1])
    assert (pb.P @ pb.P).first_difference(pb.P) is None
    I = identity_family(d.basis)
    assert (pb.L @ pb.Linv).first_difference(I) is None


def test_free_n633_projection_identities():
    d, d0, delta0, G = _setup("free_n633")
    pb = build_projections(d, d0, delta0, G)
    assert (pb.P @ pb.P).first_difference(pb.P) is None
    assert (pb.P @ d).first_difference(d @ pb.P) is None
    assert (pb.L @ pb.Pi0 @ pb.Linv).first_difference(pb.P) is None
