"""Exact coefficient rings and the dense matrix kernel."""
from .linalg import (bareiss, det, field_embed, inverse, is_invertible, pivot_columns, rank,
                     rank_and_kernel, right_inverse, rref, solve)
from .matrix import Matrix, block, block_diag, hstack, mat_mul, vstack
from .rings import (QQ, ZZ, ExtensionField, Integers, PrimeField, Rationals, Ring, conway_like_field,
                    is_irreducible, ring_from_descriptor, ring_from_string)
from .snf import invariant_factors, snf

__all__ = [
    "Matrix", "mat_mul", "hstack", "vstack", "block", "block_diag",
    "Ring", "PrimeField", "ExtensionField", "Rationals", "Integers", "QQ", "ZZ",
    "ring_from_descriptor", "ring_from_string", "conway_like_field", "is_irreducible",
    "rref", "rank", "rank_and_kernel", "det", "bareiss", "inverse", "is_invertible",
    "right_inverse", "solve", "pivot_columns", "field_embed", "snf", "invariant_factors",
]
