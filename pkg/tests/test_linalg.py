from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rumin.linalg import (Matrix, as_fraction, column_basis, det, gram_projection, inverse, is_spd, nullspace,
                          power, rank, rref, solve)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(n_max=4):
    return st.integers(1, n_max).flatmap(
        lambda r: st.integers(1, n_max).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("3/6") == Fraction(1, 2)


def test_rank_and_nullspace_small():
    M = Matrix.from_rational([[1, 2, 3], [2, 4, 6]])
    assert rank(M) == 1
    K = nullspace(M)
    assert K.ncols == 2
    assert (M @ K).is_zero()


def test_inverse_and_det():
    M = Matrix.from_rational([[2, 1], [1, 2]])
    assert det(M) == 3
    assert inverse(M) @ M == Matrix.identity(2)
    with pytest.raises(ValueError):
        inverse(Matrix.from_rational([[1, 2], [2, 4]]))


def test_is_spd():
    assert is_spd(Matrix.from_rational([[2, 1], [1, 2]]))
    assert not is_spd(Matrix.from_rational([[1, 2], [2, 1]]))
    assert not is_spd(Matrix.from_rational([[1, 1], [0, 1]]))


def test_solve_and_power():
    M = Matrix.from_rational([[1, 1], [0, 1]])
    assert power(M, 3) == Matrix.from_rational([[1, 3], [0, 1]])
    B = Matrix.from_rational([[3], [1]])
    assert M @ solve(M, B) == B


@given(matrices())
def test_rank_nullity(rows):
    M = Matrix(rows)
    K = nullspace(M)
    assert rank(M) + K.ncols == M.ncols
    assert (M @ K).is_zero()
    assert column_basis(M).ncols == rank(M)


@given(matrices())
def test_rref_pivots_match_rank(rows):
    M = Matrix(rows)
    _, piv = rref(M)
    assert len(piv) == rank(M)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_roundtrip(rows):
    M = Matrix(rows)
    if det(M) == 0:
        assert rank(M) < M.nrows
        return
    assert M @ inverse(M) == Matrix.identity(M.nrows)


@given(matrices(3))
def test_gram_projection_is_orthogonal_projection(rows):
    M = Matrix(rows)
    n = M.nrows
    A = Matrix([[Fraction(i == j) + Fraction(1, 2 + i + j) for j in range(n)] for i in range(n)])
    G = A.T() @ A
    K = column_basis(M)
    if K.ncols == 0:
        return
    Pi = gram_projection(K, G)
    assert Pi @ Pi == Pi
    assert G @ Pi == Pi.T() @ G
    assert Pi @ K == K
