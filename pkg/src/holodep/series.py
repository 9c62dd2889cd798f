"""Truncated power series and lazily expanded holonomic series.

``TruncSeries`` is a prefix ``c_0 + c_1 s + ... + c_N s^N`` with ``s = x - base``,
known modulo ``s^(N+1)``.  ``HoloSeries`` is a power-series solution at 0 of
an operator, produced coefficient by coefficient from the recurrence that the
Euler form ``sum_j x^j p_j(delta)`` induces on coefficients.
"""

import threading
from fractions import Fraction
from math import gcd, lcm

from .algebra import Poly, RationalFunction
from .errors import (IndicialError, PrecisionError, SingularPointError,
                     UnsupportedError)

DEFAULT_ORDER = 200


def _fmt(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _scaled(cs):
    """``(ints, d)`` with ``cs[i] == ints[i] / d``."""
    d = lcm(*(Fraction(c).denominator for c in cs)) if cs else 1
    return [Fraction(c).numerator * (d // Fraction(c).denominator) for c in cs], d


def _convolve(a, b, n):
    """First ``n + 1`` coefficients of the product, in integer arithmetic."""
    ia, da = _scaled(a[: n + 1])
    ib, db = _scaled(b[: n + 1])
    nz = [i for i, v in enumerate(ia) if v]
    d = da * db
    out = []
    for k in range(n + 1):
        acc = 0
        for i in nz:
            if i > k:
                break
            acc += ia[i] * ib[k - i]
        out.append(Fraction(acc, d))
    return out


class TruncSeries:
    __slots__ = ("coeffs", "base", "var")

    def __init__(self, coeffs, base=0, var="x"):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise PrecisionError("a truncated series needs at least one coefficient")
        self.base = Fraction(base)
        self.var = var

    @classmethod
    def from_ratfunc(cls, r, order=DEFAULT_ORDER, base=0):
        if not isinstance(r, RationalFunction):
            r = RationalFunction._lift(r, "x")
        try:
            cs = r.taylor(base, order + 1)
        except SingularPointError:
            raise SingularPointError(f"{r} has a pole at the base point {base}") from None
        return cls(cs, base, r.var)

    @classmethod
    def zero(cls, order, base=0, var="x"):
        return cls([0] * (order + 1), base, var)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return self.coeffs[k]
        if k < 0:
            return Fraction(0)
        if k > self.order:
            raise PrecisionError(f"coefficient {k} beyond known order {self.order}")
        return self.coeffs[k]

    def truncated(self, n):
        if n > self.order:
            raise PrecisionError(f"requested order {n} but only {self.order} is known")
        return TruncSeries(self.coeffs[: n + 1], self.base, self.var)

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.coeffs, self.base) == (other.coeffs, other.base)

    def __hash__(self):
        return hash((self.coeffs, self.base))

    def _check(self, other):
        if other.base != self.base:
            raise ValueError("series at different base points")

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.base, self.var)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction, Poly)):
            other = self._lift_scalar(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        n = min(self.order, other.order)
        return TruncSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)],
                           self.base, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _lift_scalar(self, c):
        if isinstance(c, (int, Fraction)):
            return TruncSeries([c] + [0] * self.order, self.base, self.var)
        if isinstance(c, Poly):
            c = RationalFunction(c)
        return TruncSeries.from_ratfunc(c, self.order, self.base)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncSeries([c * other for c in self.coeffs], self.base, self.var)
        if isinstance(other, Poly):
            other = RationalFunction(other)
        if isinstance(other, RationalFunction):
            return self.scale_by(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        n = min(self.order, other.order)
        return TruncSeries(_convolve(self.coeffs, other.coeffs, n), self.base, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Poly):
            other = RationalFunction(other)
        if isinstance(other, RationalFunction):
            return self.scale_by(other.inverse())
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative series powers are not supported")
        result = TruncSeries([1] + [0] * self.order, self.base, self.var)
        for _ in range(n):
            result = result * self
        return result

    def scale_by(self, r):
        """Multiply by a rational function, tracking its valuation at the base.

        If ``r = s^v u`` with ``u`` a unit, the product is known to order
        ``N + v``; a pole (``v < 0``) needs the first ``-v`` coefficients of the
        series to vanish.
        """
        if not r:
            return TruncSeries.zero(self.order, self.base, self.var)
        v, ucs = r.laurent_at(self.base, self.order + 1)
        if v < 0:
            if any(self.coeffs[:-v]):
                raise SingularPointError(
                    f"pole of order {-v} at {self.base} against a series of "
                    "insufficient valuation")
            if self.order + v < 0:
                raise PrecisionError("no coefficients left after division")
            body = TruncSeries(self.coeffs[-v:], self.base, self.var)
            return body * TruncSeries(ucs[: body.order + 1], self.base, self.var)
        prod = self * TruncSeries(ucs, self.base, self.var)
        return TruncSeries((Fraction(0),) * v + prod.coeffs, self.base, self.var)

    # -- calculus ---------------------------------------------------------
    def derivative(self):
        if self.order == 0:
            raise PrecisionError("derivative of an order-0 series")
        return TruncSeries([k * self.coeffs[k] for k in range(1, len(self.coeffs))],
                           self.base, self.var)

    def euler_derivative(self):
        return self.derivative().scale_by(RationalFunction.gen(self.var))

    def integrate(self, constant=0):
        """Term-wise primitive with value ``constant`` at the base."""
        return TruncSeries([constant] + [c / (k + 1) for k, c in enumerate(self.coeffs)],
                           self.base, self.var)

    # -- output -----------------------------------------------------------
    def _power_str(self, k):
        s = self.var if self.base == 0 else f"({self.var} - {_fmt(self.base)})" \
            if self.base > 0 else f"({self.var} + {_fmt(-self.base)})"
        return "" if k == 0 else s if k == 1 else f"{s}^{k}"

    def to_str(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            p = self._power_str(k)
            if not p:
                body = _fmt(mag)
            elif mag == 1:
                body = p
            else:
                body = f"{_fmt(mag)}*{p}"
            parts.append((sign, body))
        tail = f"O({self._power_str(1)}^({self.order + 1}))"
        if not parts:
            return tail
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return f"{out} + {tail}"

    def to_json(self):
        return [_fmt(c) for c in self.coeffs]

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"TruncSeries({self.to_str()!r})"


# ---------------------------------------------------------------------------


def _euler_recurrence_form(L):
    """Split an operator into ``[p_0, p_1, ...]`` with ``L ~ sum_j x^j p_j(delta)``.

    Denominators are cleared and a common power of ``x`` is divided out,
    which does not change the solution space.
    """
    from .ore import op_convert, to_laurent_form  # noqa: F401  (cycle guard)

    if L.var != "x":
        raise UnsupportedError("series are expanded in the variable x")
    if L.kind == "D":
        L, _ = op_convert(L, "delta")
    if not L.coeffs:
        raise IndicialError("degenerate leading delta-polynomial")
    den = Poly((1,), "x")
    for c in L.coeffs:
        if isinstance(c, RationalFunction):
            den = den * c.den.exact_div(den.gcd(c.den))
        else:
            raise UnsupportedError("series expansion needs rational-function coefficients")
    polys = [(c * den).num for c in L.coeffs]
    low = min(p.valuation for p in polys if p)
    high = max(p.degree for p in polys)
    ps = []
    for j in range(low, high + 1):
        ps.append(Poly([p[j] for p in polys], "d"))
    if not ps or not ps[0]:
        raise IndicialError("degenerate leading delta-polynomial")
    return ps


class HoloSeries:
    """Power-series solution at 0 of a linear differential operator.

    ``initials`` maps exponents to values (a list means exponents 0, 1, ...).
    Values are required exactly at the nonnegative integer roots of the
    indicial polynomial ``p_0``; other supplied values are checked against the
    recurrence.  Coefficient requests are serialized by an internal lock, so
    one object may be shared between threads.
    """

    def __init__(self, annihilator, initials, base=0):
        if Fraction(base) != 0:
            raise UnsupportedError("holonomic series are expanded at 0; shift rational data instead")
        self.annihilator = annihilator
        self.base = Fraction(0)
        self.var = "x"
        if isinstance(initials, dict):
            init = {int(k): Fraction(v) for k, v in initials.items()}
        else:
            init = {k: Fraction(v) for k, v in enumerate(initials)}
        self.initials = init
        self._setup()
        self._cache = []
        self._lock = threading.Lock()

    def _setup(self):
        self.recurrence = _euler_recurrence_form(self.annihilator)
        p0 = self.recurrence[0]
        roots, _ = p0.rational_roots()
        self.indicial_roots = sorted(int(r) for r, _ in roots if r.denominator == 1 and r >= 0)
        for k in self.indicial_roots:
            if k not in self.initials:
                raise IndicialError(f"missing initial value at indicial root {k}")
        for k in self.initials:
            if k < 0:
                raise IndicialError(f"negative exponent {k} in initial data")

    def _next(self, k, cs):
        ps = self.recurrence
        acc = Fraction(0)
        for j in range(1, min(k, len(ps) - 1) + 1):
            c = cs[k - j]
            if c:
                acc += ps[j](k - j) * c
        d = ps[0](k)
        if d == 0:
            if acc != 0:
                raise IndicialError(
                    f"a logarithmic solution is forced at exponent {k}")
            return self.initials[k]
        val = -acc / d
        if k in self.initials and self.initials[k] != val:
            raise IndicialError(f"initial value at exponent {k} contradicts the recurrence")
        return val

    def coefficient(self, k):
        if k < 0:
            return Fraction(0)
        with self._lock:
            cs = self._cache
            while len(cs) <= k:
                cs.append(self._next(len(cs), cs))
            return cs[k]

    def __getitem__(self, k):
        return self.coefficient(k)

    def coefficients(self, n):
        """``[c_0, ..., c_n]``."""
        self.coefficient(n)
        with self._lock:
            return list(self._cache[: n + 1])

    def truncated(self, n):
        return TruncSeries(self.coefficients(n), 0, "x")

    def __repr__(self):
        return f"{type(self).__name__}({self.annihilator.to_str()!r})"


def series_from_operator(L, initials, order=DEFAULT_ORDER):
    s = HoloSeries(L, initials)
    if order is not None:
        s.coefficient(order)
    return s


def as_trunc(f, order):
    if isinstance(f, TruncSeries):
        return f.truncated(order)
    if hasattr(f, "truncated"):
        return f.truncated(order)
    if isinstance(f, (RationalFunction, Poly, int, Fraction)):
        return TruncSeries.from_ratfunc(RationalFunction._lift(f, "x"), order)
    raise TypeError(f"not a series: {f!r}")


def apply_operator(L, f, order):
    """``L(f)`` truncated to ``order``; raises when ``f`` is too short."""
    if L.var != f.var:
        raise ValueError(f"operator in {L.var} applied to a series in {f.var}")
    if L.ring is not RationalFunction:
        raise UnsupportedError("only rational-function coefficients act on series")
    result = None
    cur = f
    for j, c in enumerate(L.coeffs):
        if j:
            cur = cur.derivative() if L.kind == "D" else cur.euler_derivative()
        if c:
            term = cur.scale_by(c)
            result = term if result is None else result + term
    if result is None:
        return TruncSeries.zero(order, f.base, f.var)
    if result.order < order:
        raise PrecisionError(
            f"order {order} requested but input only supports {result.order}")
    return result.truncated(order)


def series_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op in ("mul", "scalar-ratfunc-mul", "scale"):
        return a * b
    raise ValueError(f"unknown series operation {op!r}")


def series_solve_system(S, initial, order=DEFAULT_ORDER, base=0):
    """Solve ``Y' = A Y`` at an ordinary point with ``Y(base) = initial``."""
    n = S.n
    if len(initial) != n:
        raise ValueError(f"initial vector has length {len(initial)}, system has {n}")
    try:
        A = [[S.A[i][j].taylor(base, order + 1) for j in range(n)] for i in range(n)]
    except SingularPointError:
        raise SingularPointError("singular point; expand elsewhere via shift") from None
    # integer arithmetic over common denominators: A = Ai / da, Y = Yi / dy
    flat, da = _scaled([c for row in A for a in row for c in a])
    m = order + 1
    Ai = [[flat[(i * n + j) * m:(i * n + j + 1) * m] for j in range(n)] for i in range(n)]
    Y = [[Fraction(v)] for v in initial]
    Yi, dy = _scaled([col[0] for col in Y])
    Yi = [[v] for v in Yi]
    for k in range(order):
        new = []
        for i in range(n):
            acc = 0
            for j in range(n):
                a, y = Ai[i][j], Yi[j]
                for l in range(k + 1):
                    if a[l]:
                        acc += a[l] * y[k - l]
            new.append(Fraction(acc, da * dy * (k + 1)))
        d = lcm(*(c.denominator for c in new))
        if dy % d:
            g = d // gcd(dy, d)
            Yi = [[v * g for v in col] for col in Yi]
            dy *= g
        for i, c in enumerate(new):
            Y[i].append(c)
            Yi[i].append(c.numerator * (dy // c.denominator))
    return [TruncSeries(col, base) for col in Y]


def series_shift(expr, new_base, order=DEFAULT_ORDER):
    """Re-expand a rational function (or polynomial) at ``new_base``."""
    if isinstance(expr, (RationalFunction, Poly, int, Fraction)):
        r = RationalFunction._lift(expr, "x")
        return TruncSeries.from_ratfunc(r, order, new_base)
    if isinstance(expr, HoloSeries):
        raise UnsupportedError("recentering of general holonomic series is not supported")
    raise TypeError(f"cannot shift {expr!r}")


def primitive(f, constant=0, times=1, constants=None):
    """Repeated term-wise primitive; ``constants[i]`` is the ``i``-th derivative at the base."""
    if constants is None:
        constants = [constant] + [0] * (times - 1)
    if len(constants) < times:
        raise ValueError(f"{times} integrations need {times} constants")
    for i in range(times - 1, -1, -1):
        f = f.integrate(constants[i])
    return f
