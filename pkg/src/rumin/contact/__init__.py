"""Symbolic contact-frame calculus: operators, tables, printed-table checks."""
from .ring import C0_INV, C0_INV_OP, CoefPoly, NCOperator, T, X, Y, c, cop, nc_multiply
from .tables import (BASIS, ContactPipeline, SymbolicMatrix, contact_tables, emit_lines, formal_transpose,
                     gr_of_symbolic, run_pipeline)
from .golden import TableCheck, Mismatch, expected_tables, verify_printed_tables

__all__ = [
    "C0_INV", "C0_INV_OP", "CoefPoly", "NCOperator", "X", "Y", "T", "c", "cop", "nc_multiply",
    "BASIS", "ContactPipeline", "SymbolicMatrix", "contact_tables", "emit_lines", "formal_transpose",
    "gr_of_symbolic", "run_pipeline", "TableCheck", "Mismatch", "expected_tables", "verify_printed_tables",
]
