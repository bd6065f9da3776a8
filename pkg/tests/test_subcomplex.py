import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from rumin.calculus import coframe_gram, identity_family
from rumin.lie import CATALOG_NAMES, LieAlgebraSpec, builtin, random_step2_algebra, theta_hat_frame
from rumin.linalg import Matrix, hstack, inverse, rank
from rumin.subcomplex import build_subcomplex, betti_of_subcomplex, ce_cohomology_oracle, compare_e0

EXPECTED = {
    "heisenberg3": ([1, 2, 2, 1], [1, 2, 2, 1]),
    "heisenberg5": ([1, 4, 5, 5, 4, 1], [1, 4, 5, 5, 4, 1]),
    "engel4": ([1, 3, 4, 3, 1], [1, 2, 2, 2, 1]),
    "free_n633": ([1, 3, 8, 12, 8, 3, 1], [1, 3, 8, 12, 8, 3, 1]),
}


def theta_hat_gram():
    return coframe_gram(inverse(theta_hat_frame()))


@pytest.fixture(scope="module", params=CATALOG_NAMES)
def report(request):
    return build_subcomplex(builtin(request.param))


def test_catalog_ledger_passes(report):
    assert report.ok, report.first_failure()


def test_catalog_dims_and_betti(report):
    dims, betti = EXPECTED[report.name]
    assert report.dims_E0 == dims
    assert betti_of_subcomplex(report) == betti
    assert report.oracle_betti == betti


def test_dims_split_exterior_power(report):
    n = len(report.dims_E0) - 1
    assert [a + b for a, b in zip(report.dims_E0, report.dims_F0)] == [comb(n, k) for k in range(n + 1)]


def test_graded_E0_dims_are_palindromic(report):
    # Hodge duality for the identity metric on a graded algebra
    if report.name != "engel4":
        assert report.dims_E0 == report.dims_E0[::-1]


def test_heisenberg3_D_vanishes():
    r = build_subcomplex(builtin("heisenberg3"))
    D = r.ops["D"]
    # every Betti number equals dim E0, so D vanishes identically
    assert D.is_zero()
    assert r.D_E0[1].shape == (2, 2)


def test_full_and_algebraic_agree():
    for name in CATALOG_NAMES:
        a = build_subcomplex(builtin(name), differential="full")
        b = build_subcomplex(builtin(name), differential="algebraic")
        assert a.dims_E0 == b.dims_E0 and a.betti == b.betti
        for key in a.ops:
            assert a.ops[key].first_difference(b.ops[key]) is None, key


def test_unknown_differential_rejected():
    with pytest.raises(ValueError):
        build_subcomplex(builtin("heisenberg3"), differential="symbolic")


def test_invalid_algebra_rejected():
    bad = LieAlgebraSpec("bad", 3, (1, 1, 2), {(1, 2): {3: 1}, (1, 3): {1: 1}})
    with pytest.raises(ValueError):
        build_subcomplex(bad)


@settings(max_examples=15)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_random_step2_betti_matches_oracle(seed):
    spec = random_step2_algebra(random.Random(seed))
    r = build_subcomplex(spec)
    assert r.ok, r.first_failure()
    assert r.betti == ce_cohomology_oracle(spec)


def test_homotopy_identity_on_filtered_algebra():
    spec = LieAlgebraSpec("filtered", 3, (1, 1, 2), {(1, 2): {3: 1, 1: 1}})
    r = build_subcomplex(spec)
    assert r.ok, r.first_failure()
    d, h = r.ops["d"], r.ops["h"]
    b = r.bundle
    I = identity_family(d.basis)
    assert (I - b.L @ b.Pi0 @ b.Linv).first_difference(d @ h + h @ d) is None
    assert b.P.first_difference(b.Pi0) is not None


def test_compare_identical_metrics():
    res = compare_e0(builtin("heisenberg3"))
    assert res.equal
    assert res.differing_degrees == []


def test_compare_theta_hat_on_free_n633():
    res = compare_e0(builtin("free_n633"), None, theta_hat_gram())
    assert not res.equal
    assert res.differing_degrees == [3, 4]
    assert res.degree == 3
    assert "differs in degree 3" in res.describe()


def test_theta_hat_gram_layer_blocks():
    G = theta_hat_gram()
    assert [[G[a, b] for b in range(3)] for a in range(3)] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert [[G[a, b] for b in range(3, 6)] for a in range(3, 6)] == [[1, -1, 1], [-1, 2, -2], [1, -2, 3]]


def test_compare_witness_is_in_one_side_only():
    spec = builtin("free_n633")
    res = compare_e0(spec, None, theta_hat_gram())
    ra = build_subcomplex(spec)
    rb = build_subcomplex(spec, theta_hat_gram())
    k = res.degree
    v = Matrix.from_columns([res.witness], len(res.witness))
    own, other = (ra, rb) if res.side == "a" else (rb, ra)
    assert rank(hstack([own.E0_bases[k], v], v.nrows)) == rank(own.E0_bases[k])
    assert rank(hstack([other.E0_bases[k], v], v.nrows)) > rank(other.E0_bases[k])


def _spd3(entries):
    a = Matrix([[Fraction(x) for x in entries[i:i + 3]] for i in (0, 3, 6)])
    return a.T() @ a + Matrix.identity(3)


@settings(max_examples=10)
@given(st.lists(st.integers(min_value=-3, max_value=3), min_size=9, max_size=9))
def test_degree2_E0_ignores_layer2_metric(entries):
    # Im d0 in degree 2 is the span of layer-1 wedges, orthogonal to the rest whatever layer 2 carries
    B = _spd3(entries)
    G = Matrix.identity(6)
    G = Matrix([[B[a - 3, b - 3] if a >= 3 and b >= 3 else G[a, b] for b in range(6)] for a in range(6)])
    res = compare_e0(builtin("free_n633"), None, G)
    assert 2 not in res.differing_degrees
    assert 1 not in res.differing_degrees
