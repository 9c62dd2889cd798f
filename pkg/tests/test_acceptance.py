"""Acceptance criteria 1 to 10, one test per criterion.

The pass/fail line for every criterion is printed in the "acceptance criteria"
section at the end of the pytest run.
"""

import random
import time
from fractions import Fraction

import pytest
import sympy

from holodep.algebra import Poly, RationalFunction
from holodep.hypergeo import (Branch, HypergeomSpec, classify_pair_with_0F1,
                              hypergeom_operator, hypergeom_series)
from holodep.newton import (DeterminingMonomial, determining_monomials, newton_at_infinity,
                            operator_at_infinity)
from holodep.ore import op_apply, op_companion
from holodep.parsing import parse_operator
from holodep.parsing import parse_ratfunc as P
from holodep.relations import (IterIntInput, iterint_dependence, kolchin_brute_force,
                               kolchin_detect, linear_relation_find, logderiv_test,
                               verify_relation)
from holodep.series import TruncSeries, series_solve_system
from holodep.systems import (DiffSystem, sym_power_matrix, sys_dual, sys_sym_power,
                             sys_tensor, sys_trace_split, system_residual)

F = Fraction
X = RationalFunction.gen()
GRID = [(p, q) for q in range(7) for p in range(q + 1)]      # 0 <= p < q + 1 <= 7


def _rand_rational(rng, den=6, size=12):
    return F(rng.randint(-size, size), rng.randint(1, den))


def _rand_beta(rng):
    while True:
        b = _rand_rational(rng)
        if not (b.denominator == 1 and b <= 0):
            return b


def _spec(p, q, alpha=F(1, 3), beta=F(2, 5)):
    return HypergeomSpec([alpha + i for i in range(p)], [beta + i for i in range(q)])


@pytest.mark.criterion(1, "hypergeom_operator annihilates hypergeom_series to order 200")
def test_criterion_1_annihilation():
    rng = random.Random(1)
    start = time.perf_counter()
    for _ in range(30):
        q = rng.randint(0, 4)
        p = rng.randint(0, q)
        spec = HypergeomSpec([_rand_rational(rng) for _ in range(p)],
                             [_rand_beta(rng) for _ in range(q)])
        res = op_apply(hypergeom_operator(spec), hypergeom_series(spec), 200)
        assert res.is_zero(), spec
        assert res.order >= 200
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(2, "Newton polygon table on 0 <= p < q+1 <= 7")
def test_criterion_2_newton_table():
    for p, q in GRID:
        sigma = q - p + 1
        P_ = newton_at_infinity(hypergeom_operator(_spec(p, q)))
        assert set(P_.vertices) == {(0, 0), (p, 0), (q + 1, 1)}, (p, q)
        want = ([(F(0), p)] if p else []) + [(F(1, sigma), sigma)]
        assert list(P_.slopes) == want, (p, q)


@pytest.mark.criterion(3, "determining monomials sigma*zeta_j*t^(-1/sigma); 0F1 gives +-2*t^(-1/2)")
def test_criterion_3_determining_monomials():
    for p, q in GRID:
        sigma = q - p + 1
        M, _ = operator_at_infinity(hypergeom_operator(_spec(p, q)))
        R = determining_monomials(M, F(1, sigma))
        target = Poly.monomial(p, 1, "a") * (Poly.monomial(sigma, 1, "a") - sigma ** sigma)
        assert R.char_poly.monic() == target.monic(), (p, q)
        assert len(R.monomials) == sigma
        assert set(R.monomials) == {DeterminingMonomial(sigma, (j, sigma), F(1, sigma))
                                    for j in range(sigma)}
    rng = random.Random(3)
    want = {DeterminingMonomial.from_rational(2, F(1, 2)),
            DeterminingMonomial.from_rational(-2, F(1, 2))}
    betas = set()
    while len(betas) < 10:
        betas.add(_rand_beta(rng))
    for beta in betas:
        M, _ = operator_at_infinity(hypergeom_operator(HypergeomSpec((), (beta,))))
        R = determining_monomials(M, F(1, 2))
        assert set(R.monomials) == want and len(R.monomials) == 2
        assert [str(m) for m in R.monomials] == ["2*t^(-1/2)", "-2*t^(-1/2)"]


@pytest.mark.criterion(4, "Sym^3 of the Airy system and the first-row pattern (a^3, 3a^2b, 3ab^2, b^3)")
def test_criterion_4_sym_cube():
    N = 100
    S = op_companion(parse_operator("Dx^2 - x"))
    u, du = series_solve_system(S, [1, 0], N + 2)
    v, dv = series_solve_system(S, [0, 1], N + 2)
    S3 = sys_sym_power(S, 3)
    # Sym^3 of the fundamental matrix: every column solves the Sym^3 system
    G = sym_power_matrix([[u, v], [du, dv]], 3)
    assert [G[0][j].truncated(N) for j in range(4)] == \
        [(u ** 3).truncated(N), (u * u * v * 3).truncated(N),
         (u * v * v * 3).truncated(N), (v ** 3).truncated(N)]
    for j in range(4):
        col = [G[i][j] for i in range(4)]
        assert all(r.is_zero() and r.order >= N for r in system_residual(S3, col, N))
    # monomials of a single solution vector
    for y, dy in ((u, du), (v, dv)):
        mono = [y ** 3, y * y * dy, y * dy * dy, dy ** 3]
        assert all(r.is_zero() and r.order >= N for r in system_residual(S3, mono, N))
    a, b, c, d = sympy.symbols("a b c d")
    row = [sympy.expand(e) for e in sym_power_matrix([[a, b], [c, d]], 3)[0]]
    assert row == [a ** 3, 3 * a ** 2 * b, 3 * a * b ** 2, b ** 3]


def _rand_rf(rng):
    num = Poly([_rand_rational(rng, 4, 5) for _ in range(rng.randint(1, 3))], "x")
    den = Poly((1,), "x")
    for _ in range(rng.randint(0, 1)):
        den = den * Poly((-rng.randint(-3, 3), 1), "x")
    return RationalFunction(num, den)


def _rand_system(rng, n):
    return DiffSystem([[_rand_rf(rng) for _ in range(n)] for _ in range(n)])


def _sym(r, x):
    def conv(p):
        return sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                   for i, c in enumerate(p.coeffs))
    return conv(r.num) / conv(r.den)


def _zero_to(rs, N):
    return all(r.is_zero() and r.order >= N for r in rs)


@pytest.mark.criterion(5, "tensor, dual pairing and trace-split witnesses on 20 random systems")
def test_criterion_5_constructions():
    N = 100
    base = F(1, 2)
    rng = random.Random(5)
    x = sympy.Symbol("x")
    for i in range(20):
        S = _rand_system(rng, 2 + i % 2)
        T = _rand_system(rng, 2 + (i // 2) % 2)
        n = S.n
        y = series_solve_system(S, [_rand_rational(rng) for _ in range(n)], N + 1, base)
        z = series_solve_system(T, [_rand_rational(rng) for _ in range(T.n)], N + 1, base)
        tens = [y[a] * z[b] for a in range(n) for b in range(T.n)]
        assert _zero_to(system_residual(sys_tensor(S, T), tens, N), N)

        Sd = sys_dual(S)
        A = sympy.Matrix(n, n, lambda r, c: _sym(S.A[r][c], x))
        B = sympy.Matrix(n, n, lambda r, c: _sym(Sd.A[r][c], x))
        assert (B.T + A).applyfunc(sympy.simplify) == sympy.zeros(n, n)
        w = series_solve_system(Sd, [_rand_rational(rng) for _ in range(n)], N + 1, base)
        pairing = sum((w[k] * y[k] for k in range(1, n)), w[0] * y[0])
        assert pairing.derivative().truncated(N - 1).is_zero()

        t, R = sys_trace_split(S)
        scalar = series_solve_system(DiffSystem([[t]]), [1], N + 1, base)[0]
        Yt = series_solve_system(R, [_rand_rational(rng) for _ in range(n)], N + 1, base)
        assert R.trace() == 0
        assert _zero_to(system_residual(S, [scalar * c for c in Yt], N), N)


def _rand_rational_pole_rf(rng):
    r = RationalFunction.constant(0)
    for pole in rng.sample(range(-3, 4), rng.randint(0, 3)):
        r = r + RationalFunction.constant(F(rng.randint(-6, 6), rng.randint(1, 4))) / (X - pole)
    if rng.random() < 0.3:
        r = r + rng.randint(-2, 2)
    return r


@pytest.mark.criterion(6, "Kolchin detector examples and agreement with brute force on 50 instances")
def test_criterion_6_kolchin():
    r = kolchin_detect(1, 2, 10)
    assert (r.m, r.n) == (2, -1) and r.witness.witness() == 1
    r = kolchin_detect(P("2/x"), P("3/x"), 10)
    assert (r.m, r.n) == (3, -2) and r.witness.witness() == 1
    assert kolchin_detect(1, X, 50) is None
    rng = random.Random(6)
    hits = 0
    for _ in range(50):
        a, b = _rand_rational_pole_rf(rng), _rand_rational_pole_rf(rng)
        s, bf = kolchin_detect(a, b, 10), kolchin_brute_force(a, b, 10)
        assert (s is None) == (bf is None), (a, b)
        if s is not None:
            hits += 1
            assert (s.m, s.n) == (bf.m, bf.n)
            w = s.witness.witness()
            assert w.derivative() / w == a * s.m + b * s.n
    assert 0 < hits < 50


@pytest.mark.criterion(7, "log-derivative test on 50 random u; +1/(2x) rejected")
def test_criterion_7_logderiv():
    rng = random.Random(7)
    for _ in range(50):
        roots = rng.sample([F(n, d) for n in range(-6, 7) for d in (1, 2, 3)], rng.randint(1, 4))
        roots = list(dict.fromkeys(roots))
        u = RationalFunction.constant(_rand_beta(rng))
        for r in roots:
            u = u * (X - r) ** rng.choice([e for e in range(-5, 6) if e])
        r = u.derivative() / u
        c = logderiv_test(r)
        assert c.is_logderiv
        ratio = u / c.witness()
        assert ratio.num.degree == 0 and ratio.den.degree == 0
        assert c.witness().derivative() / c.witness() == r
        bad = logderiv_test(r + P("1/(2*x)"))
        assert not bad.is_logderiv and bad.obstruction == "non-integer residue"


@pytest.mark.criterion(8, "planted c1*0F1 + c0 recovered (d=4, N=80); classify grid")
def test_criterion_8_pipeline():
    rng = random.Random(8)
    N = 80
    for _ in range(20):
        beta = _rand_beta(rng)
        c1 = RationalFunction(Poly([_rand_rational(rng) for _ in range(rng.randint(1, 4))], "x"))
        c0 = RationalFunction(Poly([_rand_rational(rng) for _ in range(rng.randint(1, 4))], "x"))
        if not c1:
            c1 = X + 1
        f = hypergeom_series(HypergeomSpec((), (beta,))).truncated(N)
        g = f * TruncSeries.from_ratfunc(c1, N) + TruncSeries.from_ratfunc(c0, N)
        rel = linear_relation_find(g, [f], 4, N)
        assert rel is not None
        assert rel.coefficients == (c1,) and rel.remainder == c0
        assert verify_relation(g, [f], rel, N)
    for p in range(8):
        for q in range(8):
            spec = HypergeomSpec([F(1, 3)] * p, [F(1, 2)] * q)
            br = classify_pair_with_0F1(spec).branch
            assert (br == Branch.LINEAR_IN_0F1) == (q == p + 1)
            assert (br == Branch.ONLY_IF_ALGEBRAIC) == (q == p - 1)


@pytest.mark.criterion(9, "iterated integrals: x*f1 - f2 = x^2, independent logs give NONE")
def test_criterion_9_iterint():
    start = time.perf_counter()
    inputs = [IterIntInput(P("1/x + 1"), 1, (1,)), IterIntInput(P("1/x"), 2, (0, 1))]
    rel = iterint_dependence(inputs, 1, 4, 120)
    # projective equality with (x, -1 | x^2)
    u1, u2 = rel.coefficients
    lam = u1 / X
    assert lam.num.degree == 0 and lam.den.degree == 0
    assert u2 == -lam and rel.remainder == X ** 2 * lam
    indep = [IterIntInput(P("1/x"), 1, (0,)), IterIntInput(P("1/(x - 2)"), 1, (0,))]
    assert iterint_dependence(indep, 1, 4, 120) is None
    assert time.perf_counter() - start < 5


PROPERTY_SUITES = [
    ("test_ore", ["test_commutation_rule", "test_composition_associative",
                  "test_convert_round_trip", "test_convert_delta_to_D_and_back",
                  "test_to_infinity_involution", "test_conjugation_inverse",
                  "test_conjugation_inverse_higher_degree", "test_apply_composition",
                  "test_print_parse_round_trip"]),
    ("test_newton", ["test_minkowski_additivity", "test_unit_invariance",
                     "test_independent_of_parameters"]),
    ("test_series", ["test_memoization_transparency", "test_holoseries_annihilated",
                     "test_recurrence_matches_ratio"]),
    ("test_systems", ["test_dual_involution", "test_trace_free", "test_dual_pairing_symbolic"]),
    ("test_relations", ["test_logderiv_accepts_and_recovers",
                        "test_kolchin_structural_matches_brute_force",
                        "test_relation_scaling_invariance"]),
    ("test_cli", ["test_operator_round_trip", "test_spec_round_trip"]),
]


@pytest.mark.criterion(10, "property suites (commutation, round trips, conjugation inverse, "
                           "Minkowski additivity, unit invariance, memoization)")
def test_criterion_10_property_suites():
    import importlib
    for mod, names in PROPERTY_SUITES:
        m = importlib.import_module(mod)
        for name in names:
            fn = getattr(m, name)
            assert hasattr(fn, "hypothesis"), name
            fn()
