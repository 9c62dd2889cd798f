"""Reduced rational functions over Q in one variable."""

from fractions import Fraction

from ..errors import SingularPointError, UnsupportedError, ZeroDivisorError
from .laurent import LaurentPoly
from .poly import Poly


def poly_series_div(num, den, n):
    """First ``n`` Taylor coefficients of ``num/den``; requires ``den(0) != 0``."""
    d0 = den[0]
    if d0 == 0:
        raise ZeroDivisorError("series division by a non-unit")
    dcs = den.coeffs
    out = []
    for k in range(n):
        acc = num[k]
        for i in range(1, min(k, len(dcs) - 1) + 1):
            acc -= dcs[i] * out[k - i]
        out.append(acc / d0)
    return out


class RationalFunction:
    """``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic.

    >>> x = RationalFunction.gen()
    >>> 1 / x + 1 / x
    RationalFunction('2/x')
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var=None):
        if not isinstance(num, Poly):
            num = Poly((num,), var or "x")
        var = var or num.var
        if den is None:
            den = Poly((1,), var)
        elif not isinstance(den, Poly):
            den = Poly((den,), var)
        num, den = num.with_var(var), den.with_var(var)
        if not den:
            raise ZeroDivisorError()
        if not num:
            den = Poly((1,), var)
        elif den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.leading
        if lc != 1:
            num, den = num / lc, den / lc
        self.num, self.den, self.var = num, den, var

    # -- constructors ---------------------------------------------------
    @classmethod
    def gen(cls, var="x"):
        return cls(Poly.gen(var))

    @classmethod
    def constant(cls, c, var="x"):
        return cls(Poly((c,), var))

    @classmethod
    def _lift(cls, other, var):
        if isinstance(other, RationalFunction):
            return other if other.var == var else None
        if isinstance(other, Poly):
            if other.var == var or other.degree <= 0:
                return cls(other.with_var(var))
            return None
        if isinstance(other, (int, Fraction)):
            return cls(Poly((other,), var))
        return None

    # -- queries ----------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.degree == 0

    def is_constant(self):
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0]

    def __eq__(self, other):
        o = RationalFunction._lift(other, self.var)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.num[0])
        return hash((self.var, self.num.coeffs, self.den.coeffs))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.var)

    def __add__(self, other):
        o = RationalFunction._lift(other, self.var)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den, self.var)
        return RationalFunction(self.num * o.den + o.num * self.den,
                                self.den * o.den, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        o = RationalFunction._lift(other, self.var)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RationalFunction._lift(other, self.var)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = RationalFunction._lift(other, self.var)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den, self.var)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisorError()
        return RationalFunction(self.den, self.num, self.var)

    def __truediv__(self, other):
        o = RationalFunction._lift(other, self.var)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = RationalFunction._lift(other, self.var)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, self.var)

    # -- calculus -----------------------------------------------------------
    def derivative(self):
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d, self.var)

    def euler_derivative(self):
        return self.derivative() * Poly.gen(self.var)

    # -- evaluation and expansion ------------------------------------------
    def __call__(self, value):
        dv = self.den(value)
        if dv == 0:
            raise ZeroDivisorError(f"pole at {value}")
        return self.num(value) / dv

    def polynomial_part(self):
        """``(polynomial part, proper remainder numerator)``."""
        return divmod(self.num, self.den)

    def valuation_at(self, point=0):
        """Order of vanishing at a rational point (negative for poles)."""
        if not self.num:
            raise ValueError("valuation of zero")
        point = Fraction(point)
        return self.num.shift(point).valuation - self.den.shift(point).valuation

    def laurent_at(self, point, n):
        """Expansion ``(v, [c_0..c_{n-1}])`` with ``self = sum c_i (x-point)^(v+i)``."""
        point = Fraction(point)
        if not self.num:
            return 0, [Fraction(0)] * n
        N = self.num.shift(point)
        D = self.den.shift(point)
        vn, vd = N.valuation, D.valuation
        N = Poly(N.coeffs[vn:], N.var)
        D = Poly(D.coeffs[vd:], D.var)
        return vn - vd, poly_series_div(N, D, n)

    def taylor(self, point, n):
        """First ``n`` Taylor coefficients at ``point``; errors at a pole."""
        v, cs = self.laurent_at(point, n)
        if v < 0:
            raise SingularPointError(f"pole of order {-v} at {point}")
        return ([Fraction(0)] * v + cs)[:n]

    def compose(self, p):
        """``self(p)`` for a polynomial or rational function ``p``."""
        if isinstance(p, Poly):
            p = RationalFunction(p)
        def ev(poly):
            acc = RationalFunction(Poly((), p.var))
            for c in reversed(poly.coeffs):
                acc = acc * p + c
            return acc
        return ev(self.num) / ev(self.den)

    def invert_variable(self, new_var):
        """Substitute ``var = 1/new_var`` and rename."""
        dn, dd = self.num.degree, self.den.degree
        num = self.num.reverse().with_var(new_var)
        den = self.den.reverse().with_var(new_var)
        # num(1/t)/den(1/t) = t^(dd-dn) * rev(num)/rev(den)
        k = dd - dn
        if k >= 0:
            num = num * Poly.monomial(k, 1, new_var)
        else:
            den = den * Poly.monomial(-k, 1, new_var)
        return RationalFunction(num, den, new_var)

    def to_laurent(self):
        """As a ``LaurentPoly`` when the denominator is a monomial."""
        if len(self.den.nonzero_terms()) != 1:
            raise UnsupportedError(
                f"coefficient {self} has a non-monomial denominator")
        k = self.den.degree
        return LaurentPoly(-k, self.num.coeffs, self.var)

    @classmethod
    def from_laurent(cls, lp):
        if not lp:
            return cls(Poly((), lp.var))
        if lp.val >= 0:
            return cls(Poly((0,) * lp.val + lp.coeffs, lp.var))
        return cls(Poly(lp.coeffs, lp.var), Poly.monomial(-lp.val, 1, lp.var))

    # -- printing ---------------------------------------------------------
    def to_str(self):
        if self.den.degree == 0:
            return self.num.to_str()
        n, d = self.num.to_str(), self.den.to_str()
        if len(self.num.nonzero_terms()) > 1:
            n = f"({n})"
        if len(self.den.nonzero_terms()) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction({self.to_str()!r})"
