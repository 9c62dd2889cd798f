from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from holodep.algebra import Poly, RationalFunction
from holodep.errors import SingularPointError, UnderdeterminedError, UnsupportedError
from holodep.hypergeo import HypergeomSpec, hypergeom_series
from holodep.parsing import parse_ratfunc as P
from holodep.relations import (IterIntInput, iterated_integral_series, iterint_dependence,
                               kolchin_brute_force, kolchin_detect, kolchin_order,
                               laurent_relation_find, linear_relation_find, logderiv_test,
                               poly_in_f_find, required_order, verify_relation)
from holodep.series import TruncSeries
from strategies import nonzero_rationals, rationals

X = RationalFunction.gen()


# -- logderiv -----------------------------------------------------------------------


def test_logderiv_examples():
    c = logderiv_test(P("2/x - 1/(x - 1)"))
    assert c.is_logderiv and c.witness() == P("x^2/(x - 1)")
    assert logderiv_test(P("1/(2*x)")).obstruction == "non-integer residue"
    assert logderiv_test(P("1/x^2")).obstruction == "higher-order pole"
    assert logderiv_test(P("1 + 1/x")).obstruction == "nonzero polynomial part"
    assert logderiv_test(P("0")).witness() == 1


def test_logderiv_irrational_pole():
    with pytest.raises(UnsupportedError, match="irrational poles"):
        logderiv_test(P("2*x/(x^2 - 2)"))


@st.composite
def rational_u(draw):
    roots = draw(st.lists(rationals, min_size=1, max_size=4, unique=True))
    exps = [draw(st.integers(-5, 5).filter(bool)) for _ in roots]
    u = RationalFunction.constant(draw(nonzero_rationals))
    for r, e in zip(roots, exps):
        u = u * (X - r) ** e
    return u


@given(rational_u())
def test_logderiv_accepts_and_recovers(u):
    c = logderiv_test(u.derivative() / u)
    assert c.is_logderiv
    w = c.witness()
    ratio = u / w
    assert ratio.num.degree == 0 and ratio.den.degree == 0


@given(rational_u())
def test_logderiv_half_residue_rejected(u):
    r = u.derivative() / u + P("1/(2*x)")
    assert logderiv_test(r).obstruction == "non-integer residue"


# -- Kolchin ------------------------------------------------------------------------


def test_kolchin_examples():
    assert (kolchin_detect(1, 2, 10).m, kolchin_detect(1, 2, 10).n) == (2, -1)
    r = kolchin_detect(P("2/x"), P("3/x"), 10)
    assert (r.m, r.n) == (3, -2)
    assert kolchin_detect(1, X, 50) is None


def test_kolchin_residue_witness():
    r = kolchin_detect(P("1/(2*x)"), P("1/(3*(x-1))"), 10)
    assert (r.m, r.n) == (2, -3)
    assert r.witness.witness() == P("x/(x - 1)")


def test_kolchin_order_start():
    assert list(kolchin_order(1)) == [(0, 1), (1, -1), (1, 0), (1, 1)]
    assert (2, 2) not in list(kolchin_order(2))
    assert (2, 2) in list(kolchin_order(2, primitive_only=False))


@st.composite
def rational_pole_rf(draw):
    r = RationalFunction.constant(0)
    for pole in draw(st.lists(st.integers(-3, 3), max_size=3, unique=True)):
        res = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
        r = r + RationalFunction.constant(res) / (X - pole)
    if draw(st.booleans()):
        r = r + RationalFunction.constant(draw(st.integers(-3, 3)))
    return r


@given(rational_pole_rf(), rational_pole_rf())
def test_kolchin_structural_matches_brute_force(a, b):
    s = kolchin_detect(a, b, 10)
    bf = kolchin_brute_force(a, b, 10)
    assert (s is None) == (bf is None)
    if s is not None:
        assert (s.m, s.n) == (bf.m, bf.n)


def test_kolchin_bound():
    with pytest.raises(ValueError):
        kolchin_detect(1, 2, 0)


# -- linear relations ---------------------------------------------------------------


def _0f1(beta, order):
    return hypergeom_series(HypergeomSpec((), (beta,))).truncated(order)


def test_planted_relation():
    f = _0f1(Fraction(1, 3), 80)
    g = f * TruncSeries.from_ratfunc(X + 1, 80) + TruncSeries.from_ratfunc(X ** 2, 80)
    rel = linear_relation_find(g, [f], 4, 80)
    assert rel.coefficients == (X + 1,) and rel.remainder == X ** 2
    assert verify_relation(g, [f], rel, 80)
    assert rel.to_json() == {"coeffs": ["x + 1"], "remainder": "x^2",
                             "verified_order": 80, "bounds": {"deg": 4}}


def test_no_relation_between_independent_functions():
    f = _0f1(Fraction(1, 2), 120)
    g = _0f1(Fraction(1, 3), 120)
    assert linear_relation_find(g, [f], 4, 120) is None


def test_target_in_basis():
    f = _0f1(Fraction(1), 50)
    rel = linear_relation_find(f, [f], 2, 50)
    assert rel.coefficients == (1,) and rel.remainder == 0


def test_underdetermined():
    f = _0f1(Fraction(1, 2), 30)
    with pytest.raises(UnderdeterminedError, match="underdetermined search"):
        linear_relation_find(f, [f], 4, 30)
    assert required_order(15) == 50


@given(st.lists(rationals, min_size=1, max_size=3), nonzero_rationals)
def test_relation_scaling_invariance(cs, lam):
    f = _0f1(Fraction(3, 4), 60)
    c1 = RationalFunction(Poly(tuple(cs), "x"))
    assume(c1)
    g = f * TruncSeries.from_ratfunc(c1, 60)
    rel = linear_relation_find(g, [f], 3, 60)
    rel2 = linear_relation_find(g * lam, [f], 3, 60)
    assert rel2.coefficients[0] == rel.coefficients[0] * lam


def test_poly_in_f():
    f = _0f1(Fraction(1, 2), 80)
    g = f * f * TruncSeries.from_ratfunc(X, 80) - f + 3
    P_ = poly_in_f_find(g, f, 2, 80)
    assert P_.coeffs == (RationalFunction.constant(3), RationalFunction.constant(-1), X)
    g = f * f + f * TruncSeries.from_ratfunc(X, 80)
    assert poly_in_f_find(g, f, 2, 80).coeffs == (0, X, 1)
    assert poly_in_f_find(f, f, 2, 80).coeffs == (0, 1)


def test_laurent_relation():
    # theta = exp(x)
    theta = hypergeom_series(HypergeomSpec((), ())).truncated(60)
    inv = TruncSeries([Fraction((-1) ** k) * c for k, c in enumerate(theta.coeffs)])
    g = theta * theta * TruncSeries.from_ratfunc(X, 60) + inv * 2
    rel, exps = laurent_relation_find(g, theta, inv, 2, 1, 60)
    got = dict(zip(exps, rel.coefficients))
    assert got == {-2: 0, -1: 2, 1: 0, 2: X}
    assert rel.remainder == 0


# -- iterated integrals ---------------------------------------------------------------


# f1 = log x + x and f2 = x log x at base 1: f1' = 1/x + 1, f2'' = 1/x
EX_INPUTS = [IterIntInput(P("1/x + 1"), 1, (1,)), IterIntInput(P("1/x"), 2, (0, 1))]


def test_iterint_example():
    rel = iterint_dependence(EX_INPUTS, 1, 4, 120)
    assert rel.coefficients == (X, RationalFunction.constant(-1))
    assert rel.remainder == X ** 2


def test_iterint_independent_logs():
    inputs = [IterIntInput(P("1/x"), 1, (0,)), IterIntInput(P("1/(x-2)"), 1, (0,))]
    assert iterint_dependence(inputs, 1, 4, 120) is None


def test_iterint_single_rational_input():
    rel = iterint_dependence([IterIntInput(P("1"), 1, (5,))], 1, 2, 60)
    assert rel.coefficients == (1,) and rel.remainder == X + 4


def test_iterint_series_values():
    f = iterated_integral_series(IterIntInput(P("1/x"), 2, (0, 1)), 1, 10)
    # x log x around 1 in s = x - 1: s + s^2/2 - s^3/6 + ...
    assert f.coeffs[:4] == (0, 1, Fraction(1, 2), Fraction(-1, 6))


def test_iterint_errors():
    with pytest.raises(SingularPointError):
        iterint_dependence([IterIntInput(P("1/x"), 1, (0,))], 0, 2, 120)
    with pytest.raises(ValueError, match="integration constants"):
        iterated_integral_series(IterIntInput(P("1/x"), 2, (0,)), 1, 20)
