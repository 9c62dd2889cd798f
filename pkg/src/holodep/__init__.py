"""Exact computations with linear differential operators over Q(x).

Hypergeometric operators, Newton polygons at infinity, determining
monomials, constructions on differential systems, holonomic series and
searches for the relations that tie such functions together.
"""

from .algebra import LaurentPoly, Poly, Rational, RationalFunction, linear_solve
from .errors import HolodepError, ParseError, UnsupportedError
from .hypergeo import (Branch, HypergeomSpec, classify_pair_with_0F1, hypergeom_operator,
                       hypergeom_series, singularity_profile)
from .newton import (DeterminingMonomial, NewtonPolygon, determining_monomials,
                     match_determining_lists, newton_at_infinity, newton_polygon, slopes,
                     sym_power_determining_list)
from .ore import (OreOperator, RamifiedOperator, op_apply, op_companion, op_compose,
                  op_convert, op_exp_conjugate, op_ramify, op_to_infinity)
from .parsing import parse_expression
from .relations import (iterint_dependence, kolchin_detect, linear_relation_find,
                        logderiv_test, poly_in_f_find)
from .series import HoloSeries, TruncSeries, series_from_operator, series_solve_system
from .systems import (DiffSystem, sys_direct_sum, sys_dual, sys_sym_power, sys_tensor,
                      sys_trace_split, wronskian)

__version__ = "0.1.0"
