from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from holodep.algebra import LaurentPoly, Poly, RationalFunction, linear_solve, matvec, nullspace
from holodep.algebra import poly as poly_module
from holodep.algebra import ratfunc as ratfunc_module
from holodep.errors import DimensionError, SingularPointError, ZeroDivisorError
from strategies import nonzero_polys, polys, ratfuncs, rationals

x = Poly.gen()
X = RationalFunction.gen()


def test_gcd_common_factor():
    assert (x * x - 1).gcd(x - 1) == x - 1


def test_divmod_exact():
    assert divmod(x * x + x, x) == (x + 1, Poly())


def test_gcd_with_zero_is_monic_p():
    p = 3 * x * x + 6
    assert Poly().gcd(p) == p.monic()
    assert p.gcd(Poly()).leading == 1


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisorError, match="zero divisor"):
        divmod(x, Poly())


def test_ratfunc_normal_forms():
    assert 1 / X + 1 / X == 2 / X
    r = X / X
    assert r.num == Poly((1,)) and r.den == Poly((1,))
    assert (1 / (X - 1)) * (X - 1) == 1


def test_ratfunc_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        X / RationalFunction.constant(0)


def test_ratfunc_derivatives():
    assert (X * X).derivative() == 2 * X
    assert (1 / X).derivative() == -1 / X ** 2
    assert RationalFunction.constant(Fraction(7, 3)).derivative() == 0


def test_ratfunc_printing():
    assert str((1 - X * X) / X ** 3) == "(-x^2 + 1)/x^3"
    assert str(2 / X) == "2/x"


def test_linear_solve_examples():
    sol = linear_solve([[1, 0], [0, 1]], [1, 2])
    assert sol.particular == [1, 2]
    assert nullspace([[1, 1]]) == [[1, -1]]
    assert not linear_solve([[1, 1], [1, 1]], [0, 1]).consistent
    with pytest.raises(DimensionError):
        linear_solve([[1, 2]], [1, 2])


def test_rational_roots():
    p = Poly.from_roots([Fraction(1, 2), Fraction(1, 2), -3]) * (x * x + 1)
    roots, cof = p.rational_roots()
    assert roots == [(-3, 1), (Fraction(1, 2), 2)]
    assert cof.monic() == (x * x + 1)


def test_laurent_basics():
    t = LaurentPoly.monomial(1)
    assert (t ** -1).ramify(2, "w") == LaurentPoly.monomial(-2, 1, "w")
    assert (t + t ** -2).valuation == -2
    assert str(LaurentPoly.monomial(-2, 1, "w")) == "w^-2"


def test_doctests():
    import doctest
    for mod in (poly_module, ratfunc_module):
        assert doctest.testmod(mod).failed == 0


@given(polys(), polys(), polys())
def test_poly_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@given(nonzero_polys(3), nonzero_polys(3), nonzero_polys(2))
def test_gcd_scales(p, q, r):
    assert (p * r).gcd(q * r) == (r * p.gcd(q)).monic()


@given(nonzero_polys(5), nonzero_polys(3))
def test_divmod_identity(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(ratfuncs(), ratfuncs())
def test_leibniz(r, s):
    assert (r * s).derivative() == r.derivative() * s + r * s.derivative()


@given(ratfuncs())
def test_ratfunc_normalized(r):
    assert r.den.leading == 1
    assert r.num.gcd(r.den).degree <= 0


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(rationals, min_size=3, max_size=3))
def test_linear_solve_recovers_consistent_rhs(M, v):
    b = matvec(M, v)
    sol = linear_solve(M, b)
    assert sol.consistent
    assert matvec(M, sol.particular) == b
    for k in sol.nullspace:
        assert matvec(M, k) == [0] * len(M)


@given(ratfuncs(), st.integers(-3, 3))
def test_taylor_matches_evaluation(r, b):
    try:
        cs = r.taylor(b, 3)
    except SingularPointError:
        return
    assert cs[0] == r(b)
