"""Exact arithmetic substrate: rationals, graded forms, matrices, real roots."""

from fractions import Fraction

from .forms import (GradedForm, Ring, block_monomials, compositions, exact_divide,
                    multifactorial, rational_str, to_rational)
from .unipoly import (UniPoly, isolate_real_roots, poly_gcd, root_bound, sign_samples,
                      squarefree_part, sturm_chain, sturm_real_root_count)
from .matrix import (ExactMatrix, adjugate, charpoly, det_bareiss_symbolic, det_cofactor,
                     det_exact, det_leibniz, det_symbolic, determinant, kernel_basis,
                     primitive_vector, symbolic_matrix)
from .binary import BinaryForm, binary_form_positive, discriminant, sylvester_matrix

Rational = Fraction

__all__ = [
    "Fraction", "Rational", "GradedForm", "Ring", "block_monomials", "compositions",
    "exact_divide", "multifactorial", "rational_str", "to_rational",
    "UniPoly", "isolate_real_roots", "poly_gcd", "root_bound", "sign_samples",
    "squarefree_part", "sturm_chain", "sturm_real_root_count",
    "ExactMatrix", "adjugate", "charpoly", "det_bareiss_symbolic", "det_cofactor",
    "det_exact", "det_leibniz", "det_symbolic", "determinant", "kernel_basis",
    "primitive_vector", "symbolic_matrix",
    "BinaryForm", "binary_form_positive", "discriminant", "sylvester_matrix",
]
