"""Laurent polynomials ``sum c_k v^k`` with finitely many integer exponents."""

from fractions import Fraction

from .poly import Poly, _coerce, _fmt_scalar


class LaurentPoly:
    """Stored as a valuation plus a dense coefficient run.

    Coefficients may be ``Fraction`` or ``Poly`` in another variable (the
    exponential-conjugation parameter ``a``).
    """

    __slots__ = ("val", "coeffs", "var")

    def __init__(self, val=0, coeffs=(), var="t"):
        cs = [_coerce(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        self.coeffs = tuple(cs[lo:hi])
        self.val = val + lo if self.coeffs else 0
        self.var = var

    @classmethod
    def monomial(cls, k, c=1, var="t"):
        return cls(k, (c,), var)

    @classmethod
    def constant(cls, c, var="t"):
        return cls(0, (c,), var)

    @classmethod
    def from_terms(cls, terms, var="t"):
        """Build from a mapping ``{exponent: coefficient}``."""
        terms = {k: c for k, c in terms.items() if c != 0}
        if not terms:
            return cls(0, (), var)
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(k, Fraction(0)) for k in range(lo, hi + 1)], var)

    @classmethod
    def from_poly(cls, p, var=None):
        return cls(0, p.coeffs, var or p.var)

    # -- queries ----------------------------------------------------------
    def __bool__(self):
        return bool(self.coeffs)

    @property
    def valuation(self):
        if not self.coeffs:
            raise ValueError("valuation of the zero Laurent polynomial")
        return self.val

    @property
    def top(self):
        """Largest exponent present."""
        return self.val + len(self.coeffs) - 1

    @property
    def lowest(self):
        return self.coeffs[0]

    def __getitem__(self, k):
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def terms(self):
        return [(self.val + i, c) for i, c in enumerate(self.coeffs) if c != 0]

    def is_monomial(self):
        return len(self.terms()) == 1

    def _same_ring(self, other):
        return isinstance(other, LaurentPoly) and other.var == self.var

    def _lift(self, other):
        if self._same_ring(other):
            return other
        if isinstance(other, Poly) and other.var == self.var:
            return LaurentPoly.from_poly(other)
        if getattr(other, "var", None) == self.var:
            return None
        return LaurentPoly(0, (other,), self.var)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.val == o.val and self.coeffs == o.coeffs

    def __hash__(self):
        if self.val == 0 and len(self.coeffs) <= 1:
            return hash(self[0])
        return hash((self.var, self.val, self.coeffs))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return LaurentPoly(self.val, [-c for c in self.coeffs], self.var)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.coeffs:
            return self
        if not self.coeffs:
            return o
        lo = min(self.val, o.val)
        hi = max(self.top, o.top)
        out = [Fraction(0)] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.val - lo + i] = c
        for i, c in enumerate(o.coeffs):
            out[o.val - lo + i] = out[o.val - lo + i] + c
        return LaurentPoly(lo, out, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._same_ring(other) or (isinstance(other, Poly) and other.var == self.var):
            o = self._lift(other)
            if not self.coeffs or not o.coeffs:
                return LaurentPoly(0, (), self.var)
            out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + a * b
            return LaurentPoly(self.val + o.val, out, self.var)
        if getattr(other, "var", None) == self.var:
            return NotImplemented
        other = _coerce(other)
        return LaurentPoly(self.val, [c * other for c in self.coeffs], self.var)

    def __rmul__(self, other):
        if getattr(other, "var", None) == self.var:
            return NotImplemented
        other = _coerce(other)
        return LaurentPoly(self.val, [other * c for c in self.coeffs], self.var)

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only of monomials")
            (k, c), = self.terms()
            return LaurentPoly.monomial(k * n, Fraction(1) / c ** (-n), self.var)
        result = LaurentPoly.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if self._same_ring(other):
            if not other.is_monomial():
                raise ValueError("division only by monomials")
            return self * other ** -1
        return LaurentPoly(self.val, [c / other for c in self.coeffs], self.var)

    def shift(self, k):
        """Multiply by ``var^k``."""
        return LaurentPoly(self.val + k, self.coeffs, self.var)

    # -- calculus & substitution ------------------------------------------
    def derivative(self):
        return LaurentPoly(self.val - 1,
                           [(self.val + i) * c for i, c in enumerate(self.coeffs)],
                           self.var)

    def euler_derivative(self):
        return LaurentPoly(self.val,
                           [(self.val + i) * c for i, c in enumerate(self.coeffs)],
                           self.var)

    def ramify(self, sigma, var=None):
        """Substitute ``var = new_var^sigma``."""
        return LaurentPoly.from_terms({k * sigma: c for k, c in self.terms()},
                                      var or self.var)

    def map_coeffs(self, f):
        return LaurentPoly(self.val, [f(c) for c in self.coeffs], self.var)

    def with_var(self, var):
        return LaurentPoly(self.val, self.coeffs, var)

    # -- printing ---------------------------------------------------------
    def to_str(self, var=None):
        var = var or self.var
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in reversed(self.terms()):
            neg = isinstance(c, Fraction) and c < 0
            mag = -c if neg else c
            if k == 0:
                body = _fmt_scalar(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{_fmt_scalar(mag)}*{mono}"
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()!r})"
