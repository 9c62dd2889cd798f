"""Linear differential operators with exact coefficients.

An operator is ``sum_i c_i * d^i`` with coefficients on the left, where the
derivation ``d`` is either ``D = d/dv`` (kind ``"D"``) or the Euler
derivation ``delta = v d/dv`` (kind ``"delta"``) in a variable
``v`` in ``{x, t, w}``.  Both obey ``d * c = c * d + theta(c)`` with
``theta = d/dv`` or ``v d/dv`` respectively, which is all composition needs.

Coefficients are ``RationalFunction`` in the operator's variable, or
``LaurentPoly`` for ramified and conjugated operators (whose coefficients
may themselves be polynomials in a conjugation parameter ``a``).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import LaurentPoly, Poly, RationalFunction
from .errors import HolodepError, PrecisionError, UnsupportedError

KINDS = ("D", "delta")
VARIABLES = ("x", "t", "w")

#: the symbolic conjugation parameter, a polynomial generator in ``a``
A = Poly.gen("a")


class MixedDerivationError(HolodepError, ValueError):
    pass


def _coerce_coeff(c, ring, var):
    if ring is LaurentPoly:
        if isinstance(c, LaurentPoly):
            if c.var != var:
                raise ValueError(f"coefficient in {c.var}, operator in {var}")
            return c
        if isinstance(c, RationalFunction):
            if c.var != var and not c.is_constant():
                raise ValueError(f"coefficient in {c.var}, operator in {var}")
            return _rf_to_laurent(c, var)
        if isinstance(c, Poly) and c.var == var:
            return LaurentPoly.from_poly(c)
        return LaurentPoly.constant(c, var)
    if isinstance(c, RationalFunction):
        if c.var != var:
            if c.is_constant():
                return RationalFunction.constant(c.constant_value(), var)
            raise ValueError(f"coefficient in {c.var}, operator in {var}")
        return c
    if isinstance(c, Poly):
        if c.var == var:
            return RationalFunction(c)
        if c.degree > 0:
            raise UnsupportedError("parametric coefficients need Laurent form")
        return RationalFunction.constant(c[0], var)
    if isinstance(c, (int, Fraction)):
        return RationalFunction.constant(c, var)
    raise TypeError(f"cannot use {c!r} as an operator coefficient")


class OreOperator:
    __slots__ = ("coeffs", "kind", "var", "ring")

    def __init__(self, coeffs=(), kind="delta", var="x", ring=None):
        if kind not in KINDS:
            raise ValueError(f"unknown derivation kind {kind!r}")
        coeffs = list(coeffs)
        if ring is None:
            ring = LaurentPoly if any(isinstance(c, LaurentPoly) for c in coeffs) \
                else RationalFunction
        cs = [_coerce_coeff(c, ring, var) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.kind = kind
        self.var = var
        self.ring = ring

    # -- constructors ---------------------------------------------------
    @classmethod
    def generator(cls, kind="delta", var="x", ring=RationalFunction):
        return cls((0, 1), kind, var, ring)

    @classmethod
    def scalar(cls, c, kind="delta", var="x", ring=None):
        if ring is None:
            ring = LaurentPoly if isinstance(c, LaurentPoly) else RationalFunction
        return cls((c,), kind, var, ring)

    @classmethod
    def from_theta_poly(cls, p, kind="delta", var="x", ring=RationalFunction):
        """The operator ``p(d)`` for a polynomial ``p`` with constant coefficients."""
        return cls(p.coeffs, kind, var, ring)

    def _zero(self):
        return OreOperator((), self.kind, self.var, self.ring)

    def _one_coeff(self):
        return _coerce_coeff(1, self.ring, self.var)

    # -- queries --------------------------------------------------------
    @property
    def order(self):
        if not self.coeffs:
            raise ValueError("order of the zero operator")
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def coefficient(self, j):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return _coerce_coeff(0, self.ring, self.var)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, OreOperator):
            try:
                other = self._as_operator(other)
            except TypeError:
                return NotImplemented
        return (self.kind, self.var, self.coeffs) == (other.kind, other.var, other.coeffs)

    def __hash__(self):
        return hash((self.kind, self.var, self.coeffs))

    def _theta(self, c):
        return c.derivative() if self.kind == "D" else c.euler_derivative()

    def _as_operator(self, other):
        if isinstance(other, OreOperator):
            return other
        return OreOperator((_coerce_coeff(other, self.ring, self.var),),
                           self.kind, self.var, self.ring)

    def _check_compatible(self, other):
        if other.kind != self.kind:
            raise MixedDerivationError("mixed derivation kinds")
        if other.var != self.var:
            raise ValueError(f"operators in different variables ({self.var}, {other.var})")
        if other.ring is not self.ring:
            if self.ring is LaurentPoly:
                return OreOperator(other.coeffs, other.kind, other.var, LaurentPoly)
            raise UnsupportedError("mixed coefficient representations")
        return other

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return OreOperator([-c for c in self.coeffs], self.kind, self.var, self.ring)

    def __add__(self, other):
        other = self._check_compatible(self._as_operator(other))
        n = max(len(self.coeffs), len(other.coeffs))
        return OreOperator([self.coefficient(j) + other.coefficient(j) for j in range(n)],
                           self.kind, self.var, self.ring)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        return self + (-self._as_operator(other))

    def __rsub__(self, other):
        return self._as_operator(other) - self

    def left_scale(self, c):
        """``c * self`` for a coefficient ``c`` (no commutation involved)."""
        c = _coerce_coeff(c, self.ring, self.var)
        return OreOperator([c * a for a in self.coeffs], self.kind, self.var, self.ring)

    def _derive_left(self):
        # d o M = sum theta(m_j) d^j + m_j d^(j+1)
        n = len(self.coeffs)
        out = [self._theta(c) for c in self.coeffs] + [_coerce_coeff(0, self.ring, self.var)]
        for j, c in enumerate(self.coeffs):
            out[j + 1] = out[j + 1] + c
        return OreOperator(out[: n + 1], self.kind, self.var, self.ring)

    def __mul__(self, other):
        other = self._check_compatible(self._as_operator(other))
        result = self._zero()
        cur = other
        for i, a in enumerate(self.coeffs):
            if i:
                cur = cur._derive_left()
            if a:
                result = result + cur.left_scale(a)
        return result

    def __rmul__(self, other):
        # scalar on the left multiplies coefficients
        return self.left_scale(other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("operator powers must be nonnegative integers")
        result = self._as_operator(1)
        for _ in range(n):
            result = result * self
        return result

    def map_coeffs(self, f, ring=None, var=None, kind=None):
        return OreOperator([f(c) for c in self.coeffs], kind or self.kind,
                           var or self.var, ring or self.ring)

    # -- normal forms -----------------------------------------------------
    def normalize(self):
        """``(monic, scale)`` with ``self = scale * monic``."""
        if not self.coeffs:
            raise ValueError("cannot normalize the zero operator")
        lc = self.leading
        return self.left_scale(1 / lc) if self.ring is RationalFunction \
            else self.map_coeffs(lambda c: c / lc), lc

    def equivalent(self, other):
        """Equal up to left multiplication by a nonzero coefficient."""
        return self.normalize()[0] == other.normalize()[0]

    # -- printing -----------------------------------------------------------
    def generator_name(self):
        if self.kind == "delta":
            return "delta"
        return "D" + self.var

    def to_str(self):
        if not self.coeffs:
            return "0"
        gen = self.generator_name()
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            gp = "" if j == 0 else gen if j == 1 else f"{gen}^{j}"
            s = str(c)
            if j and c == 1:
                terms.append(("+", gp))
                continue
            if j and c == -1:
                terms.append(("-", gp))
                continue
            if _is_simple(c):
                sign = "-" if s.startswith("-") else "+"
                s = s[1:] if sign == "-" else s
            else:
                sign, s = "+", f"({s})"
            terms.append((sign, s if j == 0 else f"{s}*{gp}"))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"OreOperator({self.to_str()!r}, kind={self.kind!r}, var={self.var!r})"


def _rf_to_laurent(c, var):
    if c.is_constant():
        return LaurentPoly.constant(c.constant_value(), var)
    return c.to_laurent()


def _is_simple(c):
    if isinstance(c, RationalFunction):
        return len(c.num.nonzero_terms()) == 1 and len(c.den.nonzero_terms()) == 1
    if isinstance(c, LaurentPoly):
        return c.is_monomial()
    return False


@dataclass(frozen=True)
class RamifiedOperator:
    """An operator in ``(w, delta_w)`` standing for one in ``t = w^sigma``."""

    base: OreOperator
    sigma: int

    def __post_init__(self):
        if self.sigma < 1:
            raise ValueError("ramification index must be positive")

    def __str__(self):
        return f"{self.base}  [t = w^{self.sigma}]"


# ---------------------------------------------------------------------------
# operations


def op_compose(L1, L2):
    """Noncommutative product ``L1 o L2``."""
    return L1 * L2


def _stirling_first_signed(j):
    """Coefficients of the falling factorial ``d(d-1)...(d-j+1)`` as a Poly."""
    p = Poly((1,), "d")
    for i in range(j):
        p = p * Poly((-i, 1), "d")
    return p


def op_convert(L, target):
    """Rewrite between ``D`` and ``delta`` in the same variable.

    Returns ``(M, unit)`` where ``unit`` is a monomial ``v^k`` (as a
    ``RationalFunction``) and ``M = unit * L`` written in the target
    derivation.  Going to ``delta`` uses ``v^j D^j = delta(delta-1)...(delta-j+1)``
    and picks the least ``k >= 0`` keeping every coefficient finite at 0;
    going to ``D`` never needs a unit.
    """
    if target not in KINDS:
        raise ValueError(f"unknown derivation kind {target!r}")
    if L.ring is not RationalFunction:
        raise UnsupportedError("conversion needs rational-function coefficients")
    one = RationalFunction.constant(1, L.var)
    if target == L.kind:
        return L, one
    v = RationalFunction.gen(L.var)
    if target == "D":
        # delta^j as an operator in D
        delta = OreOperator((0, v), "D", L.var)
        acc = OreOperator((), "D", L.var)
        power = OreOperator((1,), "D", L.var)
        for j, c in enumerate(L.coeffs):
            if j:
                power = delta * power
            if c:
                acc = acc + power.left_scale(c)
        return acc, one
    # D -> delta
    shift = 0
    for j, c in enumerate(L.coeffs):
        if c:
            shift = max(shift, j - c.valuation_at(0))
    unit = v ** shift
    out = OreOperator((), "delta", L.var)
    for j, c in enumerate(L.coeffs):
        if not c:
            continue
        ff = _stirling_first_signed(j)
        coeff = c * unit * v ** (-j)
        out = out + OreOperator.from_theta_poly(ff, "delta", L.var).left_scale(coeff)
    return out, unit


_INFINITY_SWAP = {"x": "t", "t": "x"}


def op_to_infinity(L):
    """Substitute ``x = 1/t`` (so ``delta_x = -delta_t``) in an Euler-form operator.

    The map swaps ``x`` and ``t``, so applying it twice gives back ``L``.
    """
    if L.kind != "delta":
        raise ValueError("op_to_infinity expects an operator in Euler form")
    if L.ring is not RationalFunction:
        raise UnsupportedError("op_to_infinity expects rational-function coefficients")
    if L.var not in _INFINITY_SWAP:
        raise ValueError(f"cannot move variable {L.var} to infinity")
    new = _INFINITY_SWAP[L.var]
    cs = []
    for j, c in enumerate(L.coeffs):
        c2 = c.invert_variable(new)
        cs.append(c2 if j % 2 == 0 else -c2)
    return OreOperator(cs, "delta", new)


def clear_unit(L):
    """Split ``L = v^k * M`` with the lowest power of ``v`` in ``M`` equal to 0.

    Returns ``(M, k)``; coefficients of ``M`` are Laurent polynomials.
    """
    M = to_laurent_form(L)
    k = min(c.valuation for c in M.coeffs if c)
    return M.map_coeffs(lambda c: c.shift(-k)), k


def to_laurent_form(L):
    if L.ring is LaurentPoly:
        return L
    return OreOperator([c.to_laurent() for c in L.coeffs], L.kind, L.var, LaurentPoly)


def op_ramify(L, sigma):
    """Substitute ``t = w^sigma``, ``delta_t = delta_w / sigma``."""
    if not isinstance(sigma, int) or sigma <= 0:
        raise ValueError("ramification index must be a positive integer")
    if L.kind != "delta":
        raise ValueError("op_ramify expects an operator in Euler form")
    M = to_laurent_form(L)
    cs = [c.ramify(sigma, "w") * Fraction(1, sigma ** j) for j, c in enumerate(M.coeffs)]
    return RamifiedOperator(OreOperator(cs, "delta", "w", LaurentPoly), sigma)


def substitute_derivation(L, g):
    """``sum c_j (d - g)^j`` for a coefficient ``g`` (same ring as ``L``)."""
    shifted = OreOperator.generator(L.kind, L.var, L.ring) - OreOperator.scalar(
        _coerce_coeff(g, L.ring, L.var), L.kind, L.var, L.ring)
    result = OreOperator((), L.kind, L.var, L.ring)
    power = OreOperator((1,), L.kind, L.var, L.ring)
    for j, c in enumerate(L.coeffs):
        if j:
            power = shifted * power
        if c:
            result = result + power.left_scale(c)
    return result


def op_exp_conjugate(L, a, degree=1):
    """``exp(-a w^-degree) L exp(a w^-degree)``, i.e. ``delta_w -> delta_w - degree*a*w^-degree``.

    ``a`` may be a rational number or the symbolic parameter ``A``; in the
    latter case the coefficients live in ``Q[a][w, 1/w]``.  ``degree = 0``
    is the trivial conjugation by a constant.
    """
    ram = isinstance(L, RamifiedOperator)
    op = L.base if ram else L
    if op.kind != "delta":
        raise ValueError("conjugation expects an operator in Euler form")
    op = to_laurent_form(op)
    g = LaurentPoly.monomial(-degree, a * degree, op.var) if degree else LaurentPoly((), (), op.var)
    out = substitute_derivation(op, g)
    return RamifiedOperator(out, L.sigma) if ram else out


def op_apply(L, f, order):
    """Coefficients of ``L(f)`` up to ``x^order`` (relative to the series base)."""
    from .series import HoloSeries, TruncSeries, apply_operator

    if order < 0:
        raise ValueError("order must be nonnegative")
    if isinstance(f, HoloSeries):
        f = f.truncated(order + _extra_terms(L, f.base))
    elif not isinstance(f, TruncSeries):
        raise TypeError("op_apply expects a series")
    return apply_operator(L, f, order)


def _extra_terms(L, base):
    # each derivative costs a coefficient; poles at the base cost more
    lost = L.order
    pole = 0
    for c in L.coeffs:
        if c:
            pole = max(pole, -c.valuation_at(base))
    return lost + pole


def op_companion(L):
    """Companion system ``Y' = A Y`` with ``Y = (y, y', ..., y^(n-1))``."""
    from .systems import DiffSystem

    if L.kind == "delta":
        L, _ = op_convert(L, "D")
    if L.ring is not RationalFunction:
        raise UnsupportedError("companion matrix needs rational-function coefficients")
    n = L.order
    if n < 1:
        raise ValueError("companion system of an order-0 operator")
    lc = L.leading
    zero = RationalFunction.constant(0, L.var)
    one = RationalFunction.constant(1, L.var)
    rows = []
    for i in range(n - 1):
        rows.append([one if j == i + 1 else zero for j in range(n)])
    rows.append([-L.coefficient(j) / lc for j in range(n)])
    return DiffSystem(rows)


def binomial_table(n):
    return [[comb(i, k) for k in range(i + 1)] for i in range(n + 1)]
