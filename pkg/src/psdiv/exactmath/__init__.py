from .algebra import factor, gcd_many, is_irreducible, is_reduced, is_squarefree, poly_gcd, squarefree_part
from .intmat import (
    IntMatrix,
    det,
    egcd,
    hermite_normal_form,
    identity,
    invariant_factors,
    is_unimodular,
    matmul,
    smith_normal_form,
)
from .poly import MultiPoly, parse_poly, poly_det, resultant, serialize_poly
from .rational import Rational, as_fraction, format_rational, parse_rational
from .ratfunc import RatFunc, parse_ratfunc
from .solve import SolveResult, normalize_projective, solve_affine, solve_projective

__all__ = [
    "IntMatrix", "MultiPoly", "RatFunc", "Rational", "SolveResult",
    "as_fraction", "det", "egcd", "factor", "format_rational", "gcd_many",
    "hermite_normal_form", "identity", "invariant_factors", "is_irreducible",
    "is_reduced", "is_squarefree", "is_unimodular", "matmul",
    "normalize_projective", "parse_poly", "parse_ratfunc", "parse_rational",
    "poly_det", "poly_gcd", "resultant", "serialize_poly", "smith_normal_form",
    "solve_affine", "solve_projective", "squarefree_part",
]
