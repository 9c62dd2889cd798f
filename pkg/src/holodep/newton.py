"""Newton polygons at infinity, slopes, and determining monomials.

Support points are ``(n, m)`` = (power of ``delta_t``, power of ``t``).  The
polygon is the hull of the quadrants ``{x <= n, y >= m}``: its lower boundary
is the lower convex hull of ``(n, e(n))`` with ``e(n) = min{m : (n', m) in
support, n' >= n}`` for ``n = 0 .. order``.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import LaurentPoly, Poly, rational_nth_root
from .errors import HolodepError
from .ore import A, clear_unit, op_exp_conjugate, op_ramify, op_to_infinity, to_laurent_form


class SlopeError(HolodepError, ValueError):
    pass


@dataclass(frozen=True)
class NewtonPolygon:
    support: frozenset
    vertices: tuple
    slopes: tuple          # ((slope, multiplicity), ...) with increasing slopes

    def to_json(self):
        return {
            "vertices": [list(v) for v in self.vertices],
            "slopes": [{"num": s.numerator, "den": s.denominator, "mult": k}
                       for s, k in self.slopes],
        }

    def __str__(self):
        vs = ", ".join(f"({n},{m})" for n, m in self.vertices)
        ss = ", ".join(f"{s} x{k}" for s, k in self.slopes)
        return f"vertices: {vs}\nslopes: {ss}"


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _lower_hull(points):
    hull = []
    for p in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def operator_support(L):
    M = to_laurent_form(L)
    return frozenset((n, m) for n, c in enumerate(M.coeffs) for m, _ in c.terms())


def newton_polygon(L):
    """Vertices and slopes of the lower boundary for an operator in Euler form.

    Coefficients must be Laurent polynomials (or rational functions with a
    monomial denominator).  No unit is cleared here, so multiplying ``L`` by
    ``t^k`` translates every vertex by ``(0, k)``.
    """
    if not L:
        raise ValueError("Newton polygon of the zero operator")
    if L.kind != "delta":
        raise ValueError("Newton polygon expects an operator in Euler form")
    support = operator_support(L)
    order = L.order
    e = []
    best = None
    for n in range(order, -1, -1):
        col = [m for (n2, m) in support if n2 == n]
        if col:
            best = min(col) if best is None else min(best, min(col))
        e.append((n, best))
    pts = sorted(e)
    hull = _lower_hull(pts)
    slopes = []
    for (n1, m1), (n2, m2) in zip(hull, hull[1:]):
        slopes.append((Fraction(m2 - m1, n2 - n1), n2 - n1))
    vertices = [v for v in hull if v in support]
    return NewtonPolygon(support, tuple(vertices), tuple(slopes))


def slopes(L):
    return list(newton_polygon(L).slopes)


def operator_at_infinity(L):
    """``(M, k)``: ``L`` rewritten at ``t = 1/x`` as ``t^k * M`` with ``M`` cleared."""
    if L.var == "x":
        L = op_to_infinity(L)
    return clear_unit(L)


def newton_at_infinity(L):
    return newton_polygon(operator_at_infinity(L)[0])


# ---------------------------------------------------------------------------
# determining monomials


@dataclass(frozen=True, eq=False)
class DeterminingMonomial:
    """``scale * exp(2 pi i j / sigma) * t^(-slope)``."""

    scale: Fraction
    root_of_unity: tuple        # (j, sigma)
    slope: Fraction

    def __post_init__(self):
        j, s = self.root_of_unity
        if s < 1 or not 0 <= j < s:
            raise ValueError(f"bad root of unity index {self.root_of_unity}")
        object.__setattr__(self, "scale", Fraction(self.scale))
        object.__setattr__(self, "slope", Fraction(self.slope))

    @classmethod
    def from_rational(cls, c, slope):
        c = Fraction(c)
        if c < 0:
            return cls(-c, (1, 2), slope)
        return cls(c, (0, 1), slope)

    def key(self):
        if self.scale == 0:
            return (Fraction(0), Fraction(0), Fraction(0))
        j, s = self.root_of_unity
        angle = Fraction(j, s)
        scale = self.scale
        if scale < 0:
            scale, angle = -scale, angle + Fraction(1, 2)
        return (scale, angle % 1, self.slope)

    def __eq__(self, other):
        if not isinstance(other, DeterminingMonomial):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_real(self):
        return self.key()[1] in (0, Fraction(1, 2))

    def to_json(self):
        return {"scale": str(self.scale), "zeta": list(self.root_of_unity),
                "slope": str(self.slope)}

    def to_str(self, var="t"):
        scale, angle, slope = self.key()
        if scale == 0:
            return "0"
        if angle == 0:
            coef = str(scale)
        elif angle == Fraction(1, 2):
            coef = f"-{scale}"
        else:
            coef = f"{scale}*zeta({angle.numerator},{angle.denominator})"
        if slope == 0:
            return coef
        mono = f"{var}^(-{slope})"
        if coef in ("1", "-1"):
            return coef[:-1] + mono
        return f"{coef}*{mono}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"DeterminingMonomial({self.to_str()})"


@dataclass(frozen=True)
class DeterminingReport:
    char_poly: Poly
    monomials: list = field(default_factory=list)
    residual: Poly = None
    repeated_roots: bool = False
    slope: Fraction = Fraction(0)

    def to_json(self):
        return {
            "char_poly": self.char_poly.to_str("a"),
            "monomials": [m.to_json() for m in self.monomials],
            "residual": None if self.residual is None else self.residual.to_str("a"),
            "repeated_roots": self.repeated_roots,
        }


def characteristic_polynomial(L, slope):
    """phi(a): the lowest-order term of the ``delta_w^0`` coefficient after
    ramifying by the slope's denominator and conjugating by ``exp(a w^-h)``."""
    slope = Fraction(slope)
    h, sigma = slope.numerator, slope.denominator
    M, _ = clear_unit(L)
    if h == 0:
        c0 = M.coefficient(0)
        val = c0.lowest if c0 else Fraction(0)
        return Poly((val,), "a") if not isinstance(val, Poly) else val
    R = op_ramify(M, sigma)
    C = op_exp_conjugate(R, A, degree=h)
    c0 = C.base.coefficient(0)
    if not c0:
        return Poly((), "a")
    low = c0.lowest
    return low if isinstance(low, Poly) else Poly((low,), "a")


def _roots_from_char_poly(phi, slope):
    """Monomial roots ``scale * zeta`` of ``phi`` of the form ``a^e (c_s a^s + c_0)``."""
    if not phi or phi.degree <= 0:
        return [], None, False
    e = phi.valuation
    rem = Poly(phi.coeffs[e:], "a")
    if rem.degree == 0:
        return [], None, False
    terms = rem.nonzero_terms()
    if len(terms) == 2:
        s = rem.degree
        S = -rem[0] / rem[s]
        r = rational_nth_root(abs(S), s)
        if r is not None:
            if S > 0:
                roots = [DeterminingMonomial(r, (j, s), slope) for j in range(s)]
            else:
                roots = [DeterminingMonomial(r, (2 * j + 1, 2 * s), slope) for j in range(s)]
            return roots, None, False
    return [], rem, not rem.is_squarefree()


def determining_monomials(L, slope):
    """Determining monomials of ``L`` (Euler form in ``t``) along a given slope.

    The phi(a) root pattern ``a^e (a^s - S)`` is recognised exactly; any other
    nonconstant cofactor is returned unfactored in ``residual``.
    """
    slope = Fraction(slope)
    if slope < 0:
        raise SlopeError("slopes at infinity are nonnegative")
    if L.var == "x":
        raise ValueError("determining monomials expect an operator in t; use op_to_infinity")
    poly = newton_polygon(L)
    if slope not in [s for s, _ in poly.slopes]:
        raise SlopeError(f"slope {slope} is not a slope of the Newton polygon")
    phi = characteristic_polynomial(L, slope)
    if slope == 0:
        return DeterminingReport(phi, [], None, False, slope)
    roots, residual, repeated = _roots_from_char_poly(phi, slope)
    return DeterminingReport(phi, roots, residual, repeated, slope)


def sym_power_determining_list(m):
    """Determining monomials of Sym^m of the 0F1 equation at infinity.

    The base equation has ``+-2 t^(-1/2)``; the m-th symmetric power carries
    the sums ``2(-m + 2i) t^(-1/2)`` for ``i = 0..m``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    half = Fraction(1, 2)
    return [DeterminingMonomial.from_rational(2 * (-m + 2 * i), half) for i in range(m + 1)]


def hypergeometric_determining_list(p, q):
    """``p`` zero monomials (slope 0) and ``sigma * zeta_j * t^(-1/sigma)``."""
    sigma = q - p + 1
    if sigma <= 0:
        raise ValueError("only q + 1 > p has an irregular singularity at infinity")
    zeros = [DeterminingMonomial(0, (0, 1), 0) for _ in range(p)]
    return zeros + [DeterminingMonomial(sigma, (j, sigma), Fraction(1, sigma))
                    for j in range(sigma)]


@dataclass(frozen=True)
class MatchResult:
    compatible: bool
    forced_structure: list = None


def _as_monomials(obj):
    if isinstance(obj, tuple) and len(obj) == 2 and all(isinstance(v, int) for v in obj):
        return hypergeometric_determining_list(*obj)
    return list(obj)


def match_determining_lists(candidate, target):
    """Is the candidate multiset contained in the target multiset?

    ``candidate`` is either a list of symmetric-power exponents ``m_i`` (the
    direct sum of Sym^m_i of the 0F1 equation) or a list of monomials;
    ``target`` is a ``(p, q)`` pair or a list of monomials.
    """
    structure = None
    if candidate and all(isinstance(m, int) for m in candidate):
        structure = sorted(candidate)
        cand = [d for m in candidate for d in sym_power_determining_list(m)]
    else:
        cand = list(candidate)
    tgt = Counter(d.key() for d in _as_monomials(target))
    need = Counter(d.key() for d in cand)
    ok = all(tgt[k] >= c for k, c in need.items())
    return MatchResult(ok, structure if ok else None)


def _partitions_by_dimension(total, max_part=None):
    """Multisets of ``m_i >= 0`` with ``sum (m_i + 1) <= total``."""
    if max_part is None:
        max_part = total - 1
    out = [[]]
    for m in range(min(max_part, total - 1), -1, -1):
        for rest in _partitions_by_dimension(total - (m + 1), m):
            out.append([m] + rest)
    return out


def compatible_structures(p, q):
    """All nonempty sym-power structures compatible with H(p, q)."""
    order = q + 1
    found = []
    seen = set()
    for ms in _partitions_by_dimension(order):
        if not ms:
            continue
        key = tuple(sorted(ms))
        if key in seen:
            continue
        seen.add(key)
        if match_determining_lists(list(key), (p, q)).compatible:
            found.append(list(key))
    return found
