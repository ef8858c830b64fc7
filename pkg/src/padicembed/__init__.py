"""Exact number-field arithmetic and small-prime p-adic embeddings.

Given a number field and nonzero elements, find the least prime p and an
embedding into Q_p under which every element is a p-adic unit, and check the
explicit height and prime bounds involved along the way.
"""
from .bounds import BoundReport, evaluate_bound, sharpness_primes, sharpness_quadratic
from .errors import PadicEmbedError
from .estimators import PadicEmbedder, PrimitiveElementFinder
from .heights import abs_log_height, complex_roots, mahler_measure
from .modular import (count_roots_N, cyclotomic_root_count, delta, divisor_profile, generic_prime,
                      roots_mod_p, simple_root_mod_p, smallest_simple_root_prime)
from .numfield import (FieldElement, GeneratorSet, NumberField, coefficient_height_certificate,
                       min_poly_of_element, power_basis_coords, primitive_from_generators, rebase)
from .padic import EmbeddingResult, PAdicApprox, embed_element, find_embedding, hensel_lift
from .polyarith import IntPolynomial, cyclotomic, discriminant, resultant

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "EmbeddingResult", "FieldElement", "GeneratorSet", "IntPolynomial",
    "NumberField", "PAdicApprox", "PadicEmbedError", "PadicEmbedder", "PrimitiveElementFinder",
    "abs_log_height", "coefficient_height_certificate", "complex_roots", "count_roots_N",
    "cyclotomic", "cyclotomic_root_count", "delta", "discriminant", "divisor_profile",
    "embed_element", "evaluate_bound", "find_embedding", "generic_prime", "hensel_lift",
    "mahler_measure", "min_poly_of_element", "power_basis_coords", "primitive_from_generators",
    "rebase", "resultant", "roots_mod_p", "sharpness_primes", "sharpness_quadratic",
    "simple_root_mod_p", "smallest_simple_root_prime",
]
