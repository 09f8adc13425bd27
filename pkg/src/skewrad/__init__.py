"""Finite rings, derivations and differential polynomial rings R[x;D]."""

from .corpus import default_corpus
from .derivation import Derivation, enumerate_derivations, inner_derivation, make_derivation, zero_derivation
from .errors import AlgebraError, ParseError
from .finring import (
    FiniteRing,
    IdealSet,
    build_matrix_ring,
    build_product,
    build_structure,
    build_triangular_ring,
    build_truncated_poly,
    build_zn,
    quotient_ring,
)
from .harness import certify_theorem, compute_S, quotient_transfer_check, replay_proof, semiprimitivity_certificate
from .identities import centre_intersection_check, holds_on, standard_identity
from .parsing import format_poly, parse_poly, parse_ringfile
from .radical import d_stable_core, jacobson_radical, nilradical
from .skewpoly import NotFound, SkewPoly, circle, move_coeff, poly_mul, quasi_inverse_search

__version__ = "0.1.0"
