"""Exact invariant theory of Weyl groups and degree-one generation checks."""

from .cayley import FiniteGroupTable, cayley_embed, cyclic2_sign, eta, noether_transfer, symmetric_group
from .echelon import GradedSubspaceBasis, echelon_insert
from .errors import (BudgetExceeded, DegreeMismatch, InvalidCartanType, LemmaViolation, NotInvariant,
                     NotMember, ParseError, ShapeMismatch)
from .invariants import (basic_invariants, invariant_basis, is_invariant, jacobian_certificate, molien_dim,
                         molien_series, reynolds)
from .normality import (check_dn_even_degrees, check_first_degree_generation, check_polarization_generation,
                        check_sigma_antiinvariance)
from .polarization import admissible_words, apply_Dij, apply_Pr, generators_Vm, polarize_all
from .poly import Polynomial, format_poly, parse_poly
from .semigroup import DegreeVector, decompose, enumerate_S, first_part_below, is_member, verify_generation
from .weyl import CartanType, WeylGroup, cartan_matrix, enumerate_group, to_epsilon_coordinates, weyl_group

__version__ = "0.1.0"

__all__ = [
    "FiniteGroupTable",
    "cayley_embed",
    "cyclic2_sign",
    "eta",
    "noether_transfer",
    "symmetric_group",
    "GradedSubspaceBasis",
    "echelon_insert",
    "BudgetExceeded",
    "DegreeMismatch",
    "InvalidCartanType",
    "LemmaViolation",
    "NotInvariant",
    "NotMember",
    "ParseError",
    "ShapeMismatch",
    "basic_invariants",
    "invariant_basis",
    "is_invariant",
    "jacobian_certificate",
    "molien_dim",
    "molien_series",
    "reynolds",
    "check_dn_even_degrees",
    "check_first_degree_generation",
    "check_polarization_generation",
    "check_sigma_antiinvariance",
    "admissible_words",
    "apply_Dij",
    "apply_Pr",
    "generators_Vm",
    "polarize_all",
    "Polynomial",
    "format_poly",
    "parse_poly",
    "DegreeVector",
    "decompose",
    "enumerate_S",
    "first_part_below",
    "is_member",
    "verify_generation",
    "CartanType",
    "WeylGroup",
    "cartan_matrix",
    "enumerate_group",
    "to_epsilon_coordinates",
    "weyl_group",
]
