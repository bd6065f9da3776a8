"""Exact Rumin-type subcomplexes for filtered nilpotent Lie algebras.

Everything is computed over the rationals with `fractions.Fraction`; the
symbolic contact-frame calculus lives in `rumin.contact`.
"""
from .calculus import (GramFamily, OperatorFamily, adjoint, base_differential, ce_differential, gr_part,
                       gram_family, identity_gram, respects_filtration)
from .exterior import BasisTable, enumerate_basis, hodge_star_matrix, wedge_indices
from .lie import (CATALOG_NAMES, LieAlgebraSpec, associated_graded, builtin, change_frame, induced_layer_gram,
                  is_compatible, theta_hat_frame, validate)
from .linalg import Matrix
from .subcomplex import SubcomplexReport, betti_of_subcomplex, build_subcomplex, ce_cohomology_oracle, compare_e0

__all__ = [
    "GramFamily", "OperatorFamily", "adjoint", "base_differential", "ce_differential", "gr_part", "gram_family",
    "identity_gram", "respects_filtration", "BasisTable", "enumerate_basis", "hodge_star_matrix",
    "wedge_indices", "CATALOG_NAMES", "LieAlgebraSpec", "associated_graded", "builtin", "change_frame",
    "induced_layer_gram", "is_compatible", "theta_hat_frame", "validate", "Matrix", "SubcomplexReport",
    "betti_of_subcomplex", "build_subcomplex", "ce_cohomology_oracle", "compare_e0",
]
