"""Dense univariate polynomials with exact coefficients.

Coefficients are stored lowest degree first.  The coefficient ring is
whatever the entries support: ``Fraction`` is the normal case, but a
``Poly`` may also carry ``Poly`` coefficients in another variable (this is
how ``Q[a][w]`` shows up in the Newton polygon code) or ``RationalFunction``
coefficients (polynomials in ``f`` over ``Q(x)``).

Two polynomials interact as polynomials only when they share a variable
name; anything else is treated as a scalar of the coefficient ring.
"""

from fractions import Fraction
from math import gcd as _igcd

from ..errors import ZeroDivisorError


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


def _fmt_scalar(c):
    if isinstance(c, Fraction):
        return str(c)
    s = str(c)
    if isinstance(c, Poly) and len(c.nonzero_terms()) > 1:
        return f"({s})"
    return s


class Poly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors ---------------------------------------------------
    @classmethod
    def gen(cls, var="x"):
        return cls((0, 1), var)

    @classmethod
    def constant(cls, c, var="x"):
        return cls((c,), var)

    @classmethod
    def monomial(cls, k, c=1, var="x"):
        return cls((0,) * k + (c,), var)

    @classmethod
    def from_roots(cls, roots, var="x"):
        p = cls((1,), var)
        for r in roots:
            p = p * cls((-_coerce(r), 1), var)
        return p

    # -- basic queries --------------------------------------------------
    @property
    def degree(self):
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @property
    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise ValueError("valuation of the zero polynomial")

    def nonzero_terms(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if c != 0]

    def is_constant(self):
        return len(self.coeffs) <= 1

    def _same_ring(self, other):
        return isinstance(other, Poly) and other.var == self.var

    def _scalar(self, c):
        return Poly((c,), self.var)

    def _is_scalar(self, other):
        # objects living over the same variable (rational functions, Laurent
        # polynomials) are not coefficients; let them handle the operation
        if isinstance(other, (int, Fraction)):
            return True
        return getattr(other, "var", None) != self.var

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if self._same_ring(other):
            return self.coeffs == other.coeffs
        if not self._is_scalar(other):
            return NotImplemented
        return self.coeffs == self._scalar(other).coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self[0])
        return hash((self.var, self.coeffs))

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not self._same_ring(other):
            if not self._is_scalar(other):
                return NotImplemented
            other = self._scalar(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        if not self._same_ring(other):
            if not self._is_scalar(other):
                return NotImplemented
            other = self._scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        if not self._is_scalar(other):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if self._same_ring(other):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly((), self.var)
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
            return Poly(out, self.var)
        if self._is_scalar(other):
            other = _coerce(other)
            return Poly([c * other for c in self.coeffs], self.var)
        return NotImplemented

    def __rmul__(self, other):
        if self._is_scalar(other):
            other = _coerce(other)
            return Poly([other * c for c in self.coeffs], self.var)
        return NotImplemented

    def scale(self, c):
        """Multiply every coefficient by the ring element ``c``."""
        return Poly([c * a for a in self.coeffs], self.var)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly((1,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c):
        # only division by a scalar; use divmod for polynomial division
        if self._same_ring(c):
            if c.degree == 0:
                c = c.coeffs[0]
            else:
                raise TypeError("use divmod for polynomial division")
        if c == 0:
            raise ZeroDivisorError()
        return Poly([a / c for a in self.coeffs], self.var)

    def __divmod__(self, other):
        if not self._same_ring(other):
            other = self._scalar(other)
        if not other:
            raise ZeroDivisorError()
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        if len(rem) - 1 < dq:
            return Poly((), self.var), self
        quo = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lc
            quo[k - dq] = f
            for i, b in enumerate(other.coeffs):
                rem[k - dq + i] = rem[k - dq + i] - f * b
        return Poly(quo, self.var), Poly(rem[:dq], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ValueError("inexact polynomial division")
        return q

    # -- calculus and substitution -------------------------------------
    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def euler_derivative(self):
        """``v * d/dv`` applied to the polynomial."""
        return Poly([i * c for i, c in enumerate(self.coeffs)], self.var)

    def __call__(self, value):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        if acc is None:
            return Fraction(0)
        return acc

    def compose(self, other):
        """``self(other(var))``."""
        acc = Poly((), other.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, b):
        """Taylor shift: the polynomial ``p(var + b)``."""
        b = _coerce(b)
        cs = list(self.coeffs)
        n = len(cs)
        # Horner-style synthetic shifts, O(n^2)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + b * cs[j + 1]
        return Poly(cs, self.var)

    def reverse(self, n=None):
        """Coefficients reversed against degree ``n`` (default: degree)."""
        if n is None:
            n = self.degree
        cs = [self[n - i] for i in range(n + 1)]
        return Poly(cs, self.var)

    def with_var(self, var):
        return Poly(self.coeffs, var)

    # -- field operations ------------------------------------------------
    def monic(self):
        if not self:
            return self
        return self / self.leading

    def gcd(self, other):
        """Monic gcd; ``gcd(0, p)`` is ``p`` made monic."""
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def is_squarefree(self):
        if self.degree <= 0:
            return True
        return self.gcd(self.derivative()).degree == 0

    def primitive_integer(self):
        """Integer polynomial with positive leading coefficient proportional to self."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _igcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = _igcd(g, c)
        if g == 0:
            return Poly((), self.var)
        if ints[-1] < 0:
            g = -g
        return Poly([c // g for c in ints], self.var)

    def rational_roots(self):
        """Rational roots with multiplicities, ascending; also returns the cofactor.

        The cofactor is the monic part of ``self`` with no rational roots.
        """
        if not self:
            raise ValueError("roots of the zero polynomial")
        p = self.monic()
        roots = []
        v = 0
        while p.degree > 0 and p[0] == 0:
            p = Poly(p.coeffs[1:], p.var)
            v += 1
        if v:
            roots.append((Fraction(0), v))
        while p.degree > 0:
            r = _find_rational_root(p)
            if r is None:
                break
            lin = Poly((-r, 1), p.var)
            m = 0
            while p.degree > 0:
                q, rem = divmod(p, lin)
                if rem:
                    break
                p = q
                m += 1
            roots.append((r, m))
        roots.sort()
        return roots, p

    # -- printing --------------------------------------------------------
    def to_str(self, var=None):
        var = var or self.var
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
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
        return f"Poly({self.to_str()!r}, var={self.var!r})"


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _find_rational_root(p):
    """One rational root of a polynomial with nonzero constant term, or None."""
    ip = p.primitive_integer()
    a0, an = int(ip[0]), int(ip.leading)
    for den in _divisors(an):
        for num in _divisors(a0):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if r.denominator != den:
                    continue
                if ip(r) == 0:
                    return r
    return None


def integer_nth_root(n, k):
    """Exact ``k``-th root of the integer ``n >= 0`` or None."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def rational_nth_root(r, k):
    r = Fraction(r)
    if r < 0:
        raise ValueError("negative radicand")
    a = integer_nth_root(r.numerator, k)
    b = integer_nth_root(r.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)
