"""Exact-arithmetic toolkit for integral quadratic forms and CM product surfaces.

The package turns a positive definite integral ternary quadratic form that
satisfies the classification conditions for refined Humbert invariants into
an explicit descriptor of a principally polarized abelian surface
(E x E', theta) whose invariant is equivalent to the input, and verifies the
construction by recomputing the invariant from a closed formula and reducing
it.
"""

from .binform import (
    BinaryQF,
    PolarizationTriple,
    character_set,
    character_values,
    equivalent,
    form_representing_prime,
    in_principal_genus,
    prime_represented_binary,
    q_s,
    reduce,
    reduced_forms_of_disc,
    represent_coprime,
    represented_square,
    type_d_triple,
)
from .errors import NotGeometricError, SearchExhaustedError
from .humbert import (
    SurfaceDescriptor,
    construct,
    has_D6,
    qf_imprimitive,
    qf_primitive,
    refined_humbert,
    subcover_degrees,
    verify,
    verify_detailed,
)
from .numtheory import (
    Character,
    crt,
    egcd,
    eval_character,
    factor,
    is_prime,
    jacobi,
    sqrt_mod,
)
from .ternform import (
    GenusInvariants,
    GeometricClassification,
    TernaryQF,
    adjoint,
    basic_invariants,
    character_data,
    disc_ternary,
    eisenstein_reduce,
    equivalent_ternary,
    genus_equal,
    is_geometric,
    produce_phi,
    prime_represented_ternary,
    reciprocal,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryQF",
    "Character",
    "GenusInvariants",
    "GeometricClassification",
    "NotGeometricError",
    "PolarizationTriple",
    "SearchExhaustedError",
    "SurfaceDescriptor",
    "TernaryQF",
    "adjoint",
    "basic_invariants",
    "character_data",
    "character_set",
    "character_values",
    "construct",
    "crt",
    "disc_ternary",
    "egcd",
    "eisenstein_reduce",
    "equivalent",
    "equivalent_ternary",
    "eval_character",
    "factor",
    "form_representing_prime",
    "genus_equal",
    "has_D6",
    "in_principal_genus",
    "is_geometric",
    "is_prime",
    "jacobi",
    "prime_represented_binary",
    "prime_represented_ternary",
    "produce_phi",
    "q_s",
    "qf_imprimitive",
    "qf_primitive",
    "reciprocal",
    "reduce",
    "reduced_forms_of_disc",
    "refined_humbert",
    "represent_coprime",
    "represented_square",
    "sqrt_mod",
    "subcover_degrees",
    "type_d_triple",
    "verify",
    "verify_detailed",
]
