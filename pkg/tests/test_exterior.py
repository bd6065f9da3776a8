from math import comb

import pytest
from hypothesis import given, strategies as st

from rumin.exterior import (check_weights, complement_sign, enumerate_basis, hodge_star_matrix,
                            permutation_sign, wedge_indices)
from rumin.linalg import Matrix


def test_degree_two_basis_for_heisenberg_weights():
    b = enumerate_basis(3, (1, 1, 2))
    assert b.degree(2) == ((1, 2), (1, 3), (2, 3))
    assert b.weights_of(2) == [2, 3, 3]


def test_degree_zero_is_empty_wedge():
    b = enumerate_basis(3, (1, 1, 2))
    assert b.degree(0) == ((),)
    assert b.weight(()) == 0


def test_engel_weight_of_theta13():
    assert enumerate_basis(4, (1, 1, 2, 2)).weight((1, 3)) == 3


@pytest.mark.parametrize("bad", [(1, 1), (2, 1, 3), (0, 1, 1)])
def test_invalid_weights(bad):
    with pytest.raises(ValueError):
        check_weights(3, bad)


@pytest.mark.parametrize("I,expected", [((1,), (1, (2, 3))), ((2,), (-1, (1, 3))), ((1, 3), (-1, (2,)))])
def test_complement_sign(I, expected):
    assert complement_sign(I, 3) == expected


def test_wedge_overlap_and_sign():
    assert wedge_indices((1,), (1, 2)) == (0, ())
    assert wedge_indices((2,), (1,)) == (-1, (1, 2))
    assert wedge_indices((1, 3), (2,)) == (-1, (1, 2, 3))


def test_star_examples():
    b = enumerate_basis(3, (1, 1, 2))
    S2 = hodge_star_matrix(2, b)
    assert S2[2, 0] == 1          # star(theta1 ^ theta2) = theta3
    assert not S2[0, 0] and not S2[1, 0]
    S0 = hodge_star_matrix(0, b)
    assert S0 == Matrix.from_rational([[1]])   # star 1 = vol


def test_star_rejects_non_identity_gram():
    b = enumerate_basis(2, (1, 1))
    with pytest.raises(ValueError):
        hodge_star_matrix(1, b, Matrix.from_rational([[2, 0], [0, 1]]))


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_double_star_sign(nk):
    n, k = nk
    b = enumerate_basis(n, (1,) * n)
    SS = hodge_star_matrix(n - k, b) @ hodge_star_matrix(k, b)
    sign = (-1) ** (k * (n - k))
    assert SS == Matrix.identity(comb(n, k)).scale(sign)


@given(st.permutations(list(range(1, 7))))
def test_permutation_sign_is_multiplicative_with_transposition(p):
    q = list(p)
    q[0], q[1] = q[1], q[0]
    assert permutation_sign(q) == -permutation_sign(p)


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.lists(st.integers(1, n), unique=True, max_size=n).map(lambda x: tuple(sorted(x))),
    st.lists(st.integers(1, n), unique=True, max_size=n).map(lambda x: tuple(sorted(x))))))
def test_graded_commutativity(IJ):
    I, J = IJ
    s1, K1 = wedge_indices(I, J)
    s2, K2 = wedge_indices(J, I)
    assert K1 == K2
    assert s1 == s2 * (-1) ** (len(I) * len(J))
