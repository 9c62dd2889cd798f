"""Exact arithmetic substrate: rationals, polynomials, rational functions, linear solving."""

from fractions import Fraction as Rational

from .laurent import LaurentPoly
from .linalg import LinearSolution, linear_solve, matvec, nullspace, rref, solve
from .poly import Poly, integer_nth_root, rational_nth_root
from .ratfunc import RationalFunction, poly_series_div

__all__ = [
    "Rational", "Poly", "LaurentPoly", "RationalFunction", "LinearSolution",
    "linear_solve", "nullspace", "solve", "rref", "matvec", "poly_series_div",
    "integer_nth_root", "rational_nth_root",
]
