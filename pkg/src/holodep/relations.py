"""Searches for, and certificates of, the relation shapes between holonomic functions.

* ``logderiv_test``: is a rational function ``u'/u`` for a rational ``u``?
* ``kolchin_detect``: given ``f' = a f`` and ``g' = b g``, find ``f^m g^n`` in Q(x).
* ``linear_relation_find`` and friends: polynomial ansatz solved by an exact
  nullspace on series coefficients, then re-verified by substitution.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import Poly, RationalFunction, nullspace
from .errors import (PrecisionError, SingularPointError, UnderdeterminedError,
                     UnsupportedError)
from .series import DEFAULT_ORDER, TruncSeries, as_trunc, primitive

# ---------------------------------------------------------------------------
# logarithmic derivatives


@dataclass(frozen=True)
class LogDerivCertificate:
    is_logderiv: bool
    witness_u: tuple = None          # ((root, exponent), ...)
    obstruction: str = None
    evidence: object = None

    def witness(self, var="x"):
        """``u = prod (x - r)^e`` as a rational function."""
        if not self.is_logderiv:
            raise ValueError("no witness: not a logarithmic derivative")
        u = RationalFunction.constant(1, var)
        for r, e in self.witness_u:
            u = u * RationalFunction(Poly((-r, 1), var)) ** e
        return u

    def to_json(self):
        return {
            "is_logderiv": self.is_logderiv,
            "witness": None if self.witness_u is None else
            [[str(r), e] for r, e in self.witness_u],
            "obstruction": self.obstruction,
        }

    def __str__(self):
        if not self.is_logderiv:
            return f"not a logarithmic derivative: {self.obstruction}"
        if not self.witness_u:
            return "logarithmic derivative of u = 1"
        return f"logarithmic derivative of u = {self.witness()}"


def _residues_at_rational_poles(r):
    """``([(root, residue)], irrational cofactor)`` for squarefree denominators."""
    roots, cofactor = r.den.rational_roots()
    dden = r.den.derivative()
    out = []
    for root, _ in roots:
        out.append((root, r.num(root) / dden(root)))
    return out, cofactor


def logderiv_test(r):
    """Decide whether ``r = u'/u`` with ``u`` rational, for rational poles."""
    if not r:
        return LogDerivCertificate(True, ())
    quo, _ = r.polynomial_part()
    if quo:
        return LogDerivCertificate(False, None, "nonzero polynomial part", quo)
    if not r.den.is_squarefree():
        return LogDerivCertificate(False, None, "higher-order pole", r.den)
    residues, cofactor = _residues_at_rational_poles(r)
    for root, res in residues:
        if res.denominator != 1:
            return LogDerivCertificate(False, None, "non-integer residue", (root, res))
    if cofactor.degree > 0:
        raise UnsupportedError("irrational poles unsupported")
    return LogDerivCertificate(True, tuple((root, int(res)) for root, res in residues))


# ---------------------------------------------------------------------------
# Kolchin relations


@dataclass(frozen=True)
class KolchinRelation:
    m: int
    n: int
    witness: LogDerivCertificate

    def to_json(self):
        return {"m": self.m, "n": self.n, "witness": self.witness.to_json()}

    def __str__(self):
        return f"f^{self.m} * g^{self.n} in Q(x); {self.witness}"


def _sign_normalized(m, n):
    return m > 0 or (m == 0 and n > 0)


def kolchin_order(bound, primitive_only=True):
    """Candidate pairs in the search order: by ``max(|m|,|n|)`` then lexicographic."""
    for level in range(1, bound + 1):
        pairs = []
        for m in range(0, level + 1):
            for n in range(-level, level + 1):
                if max(abs(m), abs(n)) != level or not _sign_normalized(m, n):
                    continue
                if primitive_only and gcd(m, n) != 1:
                    continue
                pairs.append((m, n))
        yield from sorted(pairs)


@dataclass
class _Decomposed:
    poly: Poly
    principal: dict          # root -> {k: coefficient of (x - root)^-k}
    irrational: RationalFunction


def _decompose(r):
    quo, _ = r.polynomial_part()
    roots, _ = r.den.rational_roots()
    principal = {}
    rest = r - RationalFunction(quo)
    for root, mult in roots:
        v, cs = r.laurent_at(root, mult)
        parts = {}
        for i, c in enumerate(cs):
            k = -(v + i)
            if k >= 1 and c:
                parts[k] = c
        principal[root] = parts
        for k, c in parts.items():
            rest = rest - RationalFunction(Poly((c,), r.var),
                                           Poly((-root, 1), r.var) ** k)
    return _Decomposed(quo, principal, rest)


def _line_constraints(da, db):
    """Rows ``[alpha, beta]`` with ``alpha m + beta n = 0`` required."""
    rows = []
    deg = max(da.poly.degree, db.poly.degree)
    for i in range(deg + 1):
        rows.append([da.poly[i], db.poly[i]])
    for root in set(da.principal) | set(db.principal):
        pa, pb = da.principal.get(root, {}), db.principal.get(root, {})
        for k in set(pa) | set(pb):
            if k >= 2:
                rows.append([pa.get(k, Fraction(0)), pb.get(k, Fraction(0))])
    return [r for r in rows if r[0] or r[1]]


def _rf_pair_kernel(a, b):
    """Rational ``(m, n)`` directions with ``m a + n b = 0``; as a nullspace basis."""
    rows = []
    num_a = a.num * b.den
    num_b = b.num * a.den
    for i in range(max(num_a.degree, num_b.degree) + 1):
        rows.append([num_a[i], num_b[i]])
    rows = [r for r in rows if r[0] or r[1]]
    return nullspace(rows, 2)


def _integer_direction(v):
    den = 1
    for c in v:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in v]
    g = gcd(*ints)
    ints = [c // g for c in ints]
    if not _sign_normalized(*ints):
        ints = [-c for c in ints]
    return tuple(ints)


def _constant_witness_pair(a, b, bound, primitive_only):
    kernel = _rf_pair_kernel(a, b)
    if not kernel:
        return None
    if len(kernel) == 2:
        return next(iter(kolchin_order(bound, primitive_only)), None)
    m, n = _integer_direction(kernel[0])
    if max(abs(m), abs(n)) > bound:
        return None
    return m, n


def kolchin_detect(a, b, bound, primitive=True):
    """First ``(m, n)`` with ``m a + n b`` a logarithmic derivative.

    Pairs are tried in a fixed total order: exact cancellations
    ``m a + n b = 0`` first (witness ``u = 1``), then by ``max(|m|, |n|)``
    and lexicographically among pairs whose first nonzero entry is positive.
    With ``primitive`` only coprime pairs are considered.
    """
    a = RationalFunction._lift(a, "x")
    b = RationalFunction._lift(b, "x")
    if bound < 1:
        raise ValueError("bound must be positive")
    hit = _constant_witness_pair(a, b, bound, primitive)
    if hit is not None:
        m, n = hit
        return KolchinRelation(m, n, logderiv_test(a * m + b * n))

    da, db = _decompose(a), _decompose(b)
    rows = _line_constraints(da, db)
    kernel = nullspace(rows, 2) if rows else nullspace([], 2)
    if not kernel:
        return None
    if len(kernel) == 1:
        v = _integer_direction(kernel[0])
        if primitive:
            candidates = [v] if max(map(abs, v)) <= bound else []
        else:
            candidates = [(k * v[0], k * v[1]) for k in range(1, bound + 1)
                          if max(abs(k * v[0]), abs(k * v[1])) <= bound]
    else:
        candidates = kolchin_order(bound, primitive)

    roots = sorted(set(da.principal) | set(db.principal))
    res = [(da.principal.get(r, {}).get(1, Fraction(0)),
            db.principal.get(r, {}).get(1, Fraction(0))) for r in roots]
    irr_a, irr_b = da.irrational, db.irrational
    has_irr = bool(irr_a) or bool(irr_b)
    for m, n in candidates:
        if any((m * ra + n * rb).denominator != 1 for ra, rb in res):
            continue
        if has_irr and (irr_a * m + irr_b * n):
            raise UnsupportedError("irrational poles unsupported")
        cert = logderiv_test(a * m + b * n)
        if cert.is_logderiv:
            return KolchinRelation(m, n, cert)
    return None


def kolchin_brute_force(a, b, bound, primitive=True):
    """Reference search: ``logderiv_test`` on every pair in the same order."""
    a = RationalFunction._lift(a, "x")
    b = RationalFunction._lift(b, "x")
    pairs = list(kolchin_order(bound, primitive))
    for m, n in pairs:
        if not (a * m + b * n):
            return KolchinRelation(m, n, logderiv_test(a * 0))
    for m, n in pairs:
        cert = logderiv_test(a * m + b * n)
        if cert.is_logderiv:
            return KolchinRelation(m, n, cert)
    return None


# ---------------------------------------------------------------------------
# linear relations over Q(x)


SAFETY_MARGIN = 20


@dataclass(frozen=True)
class LinearRelation:
    """``target = sum coefficients[i] * basis[i] + remainder`` (or ``0 = ...`` forms)."""

    coefficients: tuple
    remainder: RationalFunction
    verified_order: int
    bounds: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "coeffs": [str(c) for c in self.coefficients],
            "remainder": str(self.remainder),
            "verified_order": self.verified_order,
            "bounds": dict(self.bounds),
        }

    def __str__(self):
        cs = ", ".join(str(c) for c in self.coefficients)
        return f"coefficients: ({cs})\nremainder: {self.remainder}\n" \
               f"verified to order {self.verified_order}"


def required_order(unknowns):
    return 2 * unknowns + SAFETY_MARGIN


def _check_order(unknowns, order):
    need = required_order(unknowns)
    if order < need:
        raise UnderdeterminedError(
            f"underdetermined search: {unknowns} unknowns need order >= {need}, got {order}")


def _block_columns(f, deg, order):
    """Columns ``s^j f`` for ``j = 0..deg``, each of length ``order + 1``."""
    cols = []
    cs = f.coeffs
    for j in range(deg + 1):
        cols.append([Fraction(0)] * j + list(cs[: order + 1 - j]))
    return cols


def _one_series(order, base):
    return TruncSeries([1] + [0] * order, base)


def _solve_ansatz(series_blocks, deg, order):
    """Nullspace of ``sum_b P_b * F_b = 0 mod s^(order+1)`` with ``deg P_b <= deg``."""
    cols = []
    for f in series_blocks:
        cols.extend(_block_columns(f, deg, order))
    rows = [[c[k] for c in cols] for k in range(order + 1)]
    return nullspace(rows, len(cols))


def _split_blocks(vec, nblocks, deg, var, base):
    polys = []
    for b in range(nblocks):
        chunk = vec[b * (deg + 1):(b + 1) * (deg + 1)]
        # polynomial in s = x - base, rewritten in x
        polys.append(Poly(chunk, var).shift(-Fraction(base)))
    return polys


def _series_of_poly(p, order, base):
    return TruncSeries.from_ratfunc(RationalFunction(p), order, base)


def _prepare(series, order):
    out = []
    base = None
    for f in series:
        t = as_trunc(f, order)
        if base is None:
            base = t.base
        elif t.base != base:
            raise ValueError("all series must share the same base point")
        out.append(t)
    return out, base


def verify_cleared(q, target, coeff_polys, p, basis, order):
    """Independent check ``q T - sum q_i B_i - p = 0`` to ``order`` by series arithmetic."""
    base = basis[0].base if basis else target.base
    acc = target * _series_of_poly(q, order, base) if target is not None \
        else TruncSeries.zero(order, base)
    for qi, b in zip(coeff_polys, basis):
        acc = acc - b * _series_of_poly(qi, order, base)
    acc = acc - _series_of_poly(p, order, base)
    return acc.truncated(order).is_zero()


def linear_relation_find(target, basis, deg_bound, order=DEFAULT_ORDER):
    """Find ``target = sum c_i basis_i + r`` with ``c_i, r`` in Q(x).

    The ansatz is ``q target = sum q_i basis_i + p`` with every polynomial
    of degree ``<= deg_bound`` (``q`` a common denominator).  ``None`` means
    no such relation holds to the given order, not independence.
    """
    if deg_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    n = len(basis)
    unknowns = (deg_bound + 1) * (n + 2)
    _check_order(unknowns, order)
    series, base = _prepare([target] + list(basis), order)
    T, B = series[0], series[1:]
    blocks = [T] + [-b for b in B] + [-_one_series(order, base)]
    kernel = _solve_ansatz(blocks, deg_bound, order)
    chosen = next((v for v in kernel if any(v[: deg_bound + 1])), None)
    if chosen is None:
        return None
    polys = _split_blocks(chosen, n + 2, deg_bound, "x", base)
    q, qs, p = polys[0], polys[1:-1], polys[-1]
    if not verify_cleared(q, T, qs, p, B, order):
        raise PrecisionError("relation failed independent verification")
    Q = RationalFunction(q)
    coeffs = tuple(RationalFunction(qi) / Q for qi in qs)
    return LinearRelation(coeffs, RationalFunction(p) / Q, order, {"deg": deg_bound})


def poly_in_f_find(g, f, deg, order=DEFAULT_ORDER):
    """``P`` of degree ``<= deg`` in ``Y`` over Q(x) with ``g = P(f)``, or None."""
    ft = as_trunc(f, order)
    powers = [ft]
    for _ in range(1, deg):
        powers.append(powers[-1] * ft)
    rel = linear_relation_find(g, powers, deg, order)
    if rel is None:
        return None
    return Poly((rel.remainder,) + rel.coefficients, "Y")


def laurent_relation_find(g, theta, theta_inv, span, deg, order=DEFAULT_ORDER):
    """``g = sum_{0 < |j| <= span} c_j theta^j + r``; coefficients ordered ``j = -span..span``, skipping 0."""
    t = as_trunc(theta, order)
    ti = as_trunc(theta_inv, order)
    basis = []
    exps = []
    for j in range(-span, span + 1):
        if j == 0:
            continue
        basis.append((ti if j < 0 else t) ** abs(j))
        exps.append(j)
    rel = linear_relation_find(g, basis, deg, order)
    if rel is None:
        return None
    return rel, exps


def _normalize_projective(polys):
    """Clear denominators, remove the content, make the first nonzero entry monic-ish.

    The first nonzero polynomial gets a positive leading coefficient and the
    whole vector is scaled so that polynomial is monic.
    """
    first = next(p for p in polys if p)
    lc = first.leading
    return [p / lc for p in polys]


@dataclass(frozen=True)
class IterIntInput:
    h: RationalFunction
    depth: int
    constants: tuple = ()


def iterated_integral_series(inp, base, order):
    """``f`` with ``f^(depth) = h`` and ``f^(i)(base) = constants[i]``, to ``order``."""
    h = RationalFunction._lift(inp.h, "x")
    if inp.depth < 0:
        raise ValueError("depth must be nonnegative")
    if len(inp.constants) != inp.depth:
        raise ValueError(f"depth {inp.depth} needs {inp.depth} integration constants, "
                         f"got {len(inp.constants)}")
    try:
        hs = TruncSeries.from_ratfunc(h, order, base)
    except SingularPointError:
        raise SingularPointError(f"base point {base} is a pole of {h}") from None
    if inp.depth == 0:
        return hs
    f = primitive(hs, times=inp.depth, constants=[Fraction(c) for c in inp.constants])
    return f.truncated(order)


def iterint_dependence(inputs, base, deg_bound, order=DEFAULT_ORDER):
    """``u_i`` not all zero and ``r`` in Q(x) with ``sum u_i f_i = r``, or None.

    Degrees are raised from 0 up to ``deg_bound`` and the first relation found
    is returned, as polynomials normalized so the first nonzero ``u_i`` is monic.
    """
    inputs = [i if isinstance(i, IterIntInput) else IterIntInput(*i) for i in inputs]
    if not inputs:
        raise ValueError("no inputs")
    n = len(inputs)
    _check_order((deg_bound + 1) * (n + 1), order)
    base = Fraction(base)
    fs = [iterated_integral_series(i, base, order) for i in inputs]
    blocks = fs + [-_one_series(order, base)]
    for d in range(deg_bound + 1):
        kernel = _solve_ansatz(blocks, d, order)
        if not kernel:
            continue
        polys = _split_blocks(kernel[0], n + 1, d, "x", base)
        polys = _normalize_projective(polys)
        us, r = polys[:-1], polys[-1]
        if not verify_cleared(Poly((), "x"), None, us, -r, fs, order):
            raise PrecisionError("relation failed independent verification")
        return LinearRelation(tuple(RationalFunction(u) for u in us), RationalFunction(r),
                              order, {"deg": deg_bound})
    return None


def verify_relation(target, basis, relation, order):
    """Re-check ``target - sum c_i b_i - r = 0`` to ``order`` (target ``None`` means 0)."""
    basis_t, base = _prepare(basis, order)
    den = Poly((1,), "x")
    for c in tuple(relation.coefficients) + (relation.remainder,):
        den = den * c.den.exact_div(den.gcd(c.den))
    q = den
    qs = [(c * RationalFunction(den)).num for c in relation.coefficients]
    p = (relation.remainder * RationalFunction(den)).num
    T = as_trunc(target, order) if target is not None else None
    if T is None:
        return verify_cleared(Poly((), "x"), None, qs, -p, basis_t, order)
    return verify_cleared(q, T, qs, p, basis_t, order)
