import pytest
from hypothesis import given, settings, strategies as st

from rumin.contact import C0_INV_OP, T, X, Y, cop, emit_lines, expected_tables, verify_printed_tables
from rumin.contact.golden import (compare_tables, heisenberg_specialization, heisenberg_transpose_column,
                                    printed_D0_third_entry)
from rumin.contact.ring import NCOperator, ZERO_OP, drop_c0_derivatives
from rumin.contact.tables import contact_tables, op_identity, op_matrix, run_pipeline


@pytest.fixture(scope="module")
def pipeline():
    return run_pipeline()


@pytest.fixture(scope="module")
def tables(pipeline):
    return contact_tables(pipeline)


# -- ring ------------------------------------------------------------------


def test_frame_commutators():
    assert (Y * X).text() == "X*Y - c1*X - c2*Y - c0*T"
    assert (T * X).text() == "X*T - c3*X - c4*Y"
    assert (T * Y).text() == "Y*T - c5*X - c6*Y"


def test_leibniz_on_coefficients():
    assert (X * cop(1)).text() == "c1*X + X(c1)"
    assert (X * (C0_INV_OP * Y)).text() == "c0^-1*X*Y - c0^-2*X(c0)*Y"


def test_jacobi_rewrites_T_of_c0():
    assert (T * cop(0)).text() == "c0*T - c0*c3 - c0*c6"


def test_left_coefficient_does_not_differentiate():
    assert (cop(1) * X).text() == "c1*X"
    assert (C0_INV_OP * cop(0)).text() == "1"


def test_zero_and_identity():
    assert not ZERO_OP
    assert (X - X) == ZERO_OP
    assert ZERO_OP.text() == "0"


_atoms = [X, Y, T, cop(0), cop(1), cop(2), cop(3), C0_INV_OP, NCOperator.coef(2)]
atom = st.sampled_from(_atoms)
op = st.lists(atom, min_size=1, max_size=3).map(lambda xs: xs[0] if len(xs) == 1 else xs[0] * xs[1] + xs[-1])


@settings(max_examples=25)
@given(op, op, op)
def test_composition_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=25)
@given(op, op, op)
def test_composition_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@settings(max_examples=25)
@given(op, op)
def test_commutator_lowers_order(a, b):
    comm = a * b - b * a
    assert comm.order() <= max(a.order() + b.order() - 1, 0)


def test_text_is_canonical():
    assert (cop(2) * Y + X).text() == (X + cop(2) * Y).text() == "X + c2*Y"


# -- tables ----------------------------------------------------------------


def test_emit_lines_examples():
    lines = emit_lines()
    assert "Box0(1) = diag(0, 0, c0^2)" in lines
    assert "D(2) = (0, -Y - c1, X - c2)" in lines
    assert "Dt(1) = [(0, 0, 0), (-c3, -c4, 0), (-c5, -c6, 0)]" in lines
    assert "Pi0(2) = diag(0, 1, 1)" in lines
    assert "d(0) = [(X), (Y), (T)]" in lines


def test_emit_is_deterministic():
    assert emit_lines() == emit_lines()


def test_d_squares_to_zero(pipeline):
    for k in range(2):
        assert (pipeline.d[k + 1] @ pipeline.d[k]).is_zero()


def test_D_squares_to_zero(pipeline):
    for k in range(2):
        assert (pipeline.D[k + 1] @ pipeline.D[k]).is_zero()


def test_conjugator_inverse(pipeline):
    for k in range(4):
        assert pipeline.L[k] @ pipeline.Linv[k] == op_identity(pipeline.L[k].nrows)


def test_printed_D0_entry_collapses():
    assert not printed_D0_third_entry()


def test_transpose_column_and_weight_drop():
    col, drop = heisenberg_transpose_column()
    assert col == ["Y", "-X", "-c0"]
    assert drop is not None


def test_specialization_matches_group_pipeline():
    assert heisenberg_specialization() == {"Dt": True, "D": True, "Pi0": True}


def test_structural_checks_all_pass():
    res = verify_printed_tables()
    assert res.failures == []
    assert all(res.checks.values())


def test_printed_tables_differ_only_by_c0_derivatives():
    # the printed tables treat c0 as if X and Y did not differentiate it
    res = verify_printed_tables()
    assert {m.table for m in res.mismatches} <= {"Box(2)", "P(2)", "L(2)", "D(1)"}
    assert all(m.note == "equal once derivatives of c0 are dropped" for m in res.mismatches)


def test_tables_match_after_dropping_c0_derivatives(tables):
    expected = expected_tables()
    for name, E in expected.items():
        M = tables[name].matrix
        assert M.map(drop_c0_derivatives) == E.map(drop_c0_derivatives), name


def test_comparison_detects_a_flipped_sign(tables):
    expected = expected_tables()
    E = expected["D(2)"]
    flipped = [[E[i, j] for j in range(E.ncols)] for i in range(E.nrows)]
    flipped[0][1] = -flipped[0][1]
    expected["D(2)"] = op_matrix(flipped)
    hits = [m for m in compare_tables(tables, expected) if m.table == "D(2)"]
    assert [(m.row, m.col) for m in hits] == [(0, 1)]
    assert hits[0].expected == "Y + c1"
