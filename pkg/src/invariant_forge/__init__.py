"""Exact invariant theory for diagonalizable, permutation and alpha_q actions."""

from .fields import FieldSpec, Scalar
from .poly import Polynomial, TruncatedPoly, parse_polynomial
from .actions import (AlphaCoaction, DiagonalizableAction, PermutationAction,
                      ProductAction, coact, monomial_weight, permute_polynomial,
                      standard_alpha_rep, validate_coaction)
from .invariants import (BetaCertificate, GradedInvariantBasis, graded_invariant_basis,
                         invariant_basis, invariant_monomials, minimal_generators,
                         reynolds, split_monomial, two_step_invariants)
from .molien import molien_by_counting, molien_charsum, molien_compare

__version__ = "0.1.0"
