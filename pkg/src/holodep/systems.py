"""First-order systems ``Y' = A Y`` and the constructions of linear algebra on them."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .algebra import RationalFunction
from .errors import DimensionError, PrecisionError


def _rf(c, var="x"):
    if isinstance(c, RationalFunction):
        return c
    r = RationalFunction._lift(c, var)
    if r is None:
        raise TypeError(f"cannot use {c!r} as a matrix entry")
    return r


class DiffSystem:
    """Square matrix ``A`` over Q(x) standing for ``Y' = A Y``."""

    __slots__ = ("A", "var")

    def __init__(self, A, var="x"):
        rows = [list(r) for r in A]
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise DimensionError("system matrix must be square")
        self.A = tuple(tuple(_rf(c, var) for c in r) for r in rows)
        self.var = var

    @property
    def n(self):
        return len(self.A)

    def __eq__(self, other):
        return isinstance(other, DiffSystem) and self.A == other.A

    def __hash__(self):
        return hash(self.A)

    def entry(self, i, j):
        return self.A[i][j]

    def trace(self):
        return sum((self.A[i][i] for i in range(self.n)), RationalFunction.constant(0, self.var))

    def to_json(self):
        return [[str(c) for c in row] for row in self.A]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(c) for c in r) + "]" for r in self.A) + "]"

    def __repr__(self):
        return f"DiffSystem({self})"


def _zero(var="x"):
    return RationalFunction.constant(0, var)


def sys_direct_sum(S1, S2):
    n1, n2 = S1.n, S2.n
    z = _zero(S1.var)
    rows = [list(r) + [z] * n2 for r in S1.A]
    rows += [[z] * n1 + list(r) for r in S2.A]
    return DiffSystem(rows, S1.var)


def sys_tensor(S1, S2):
    """Kronecker sum ``A1 (x) I + I (x) A2``; index ``(i, k) -> i*n2 + k``."""
    n1, n2 = S1.n, S2.n
    N = n1 * n2
    rows = [[_zero(S1.var) for _ in range(N)] for _ in range(N)]
    for i in range(n1):
        for k in range(n2):
            r = i * n2 + k
            for j in range(n1):
                rows[r][j * n2 + k] = rows[r][j * n2 + k] + S1.A[i][j]
            for l in range(n2):
                rows[r][i * n2 + l] = rows[r][i * n2 + l] + S2.A[k][l]
    return DiffSystem(rows, S1.var)


def sys_dual(S):
    n = S.n
    return DiffSystem([[-S.A[j][i] for j in range(n)] for i in range(n)], S.var)


def sym_monomials(n, m):
    """Exponent vectors of degree ``m`` in ``n`` variables, e_1-degree descending."""
    out = []
    for combo in combinations_with_replacement(range(n), m):
        mu = [0] * n
        for i in combo:
            mu[i] += 1
        out.append(tuple(mu))
    out.sort(reverse=True)
    return out


def sys_sym_power(S, m):
    """Derivation induced on degree-``m`` monomials in the solution coordinates.

    With ``y^mu = prod y_i^mu_i`` and ``y_i' = sum_j A_ij y_j``,
    ``(y^mu)' = sum_{i,j} mu_i A_ij y^(mu - e_i + e_j)``.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError("symmetric power needs m >= 1")
    n = S.n
    basis = sym_monomials(n, m)
    index = {mu: k for k, mu in enumerate(basis)}
    N = len(basis)
    rows = [[_zero(S.var) for _ in range(N)] for _ in range(N)]
    for r, mu in enumerate(basis):
        for i in range(n):
            if not mu[i]:
                continue
            for j in range(n):
                a = S.A[i][j]
                if not a:
                    continue
                nu = list(mu)
                nu[i] -= 1
                nu[j] += 1
                c = index[tuple(nu)]
                rows[r][c] = rows[r][c] + a * mu[i]
    assert N == comb(n + m - 1, m)
    return DiffSystem(rows, S.var)


def sym_power_matrix(g, m):
    """Action of a matrix ``g`` on degree-``m`` monomials (group-level Sym^m).

    Row ``mu`` holds the coefficients of ``prod_i (sum_j g_ij x_j)^mu_i`` in the
    monomial basis; entries may be any commutative ring elements.
    """
    n = len(g)
    basis = sym_monomials(n, m)
    index = {mu: k for k, mu in enumerate(basis)}
    zero = g[0][0] * 0
    rows = []
    for mu in basis:
        # expand as a dict exponent -> coefficient
        poly = {tuple([0] * n): zero + 1}
        for i in range(n):
            for _ in range(mu[i]):
                new = {}
                for e, c in poly.items():
                    for j in range(n):
                        if g[i][j] == 0:
                            continue
                        e2 = list(e)
                        e2[j] += 1
                        e2 = tuple(e2)
                        new[e2] = new.get(e2, zero) + c * g[i][j]
                poly = new
        row = [zero] * len(basis)
        for e, c in poly.items():
            row[index[e]] = c
        rows.append(row)
    return rows


def sys_trace_split(S):
    """``(tr(A)/n, A - tr(A)/n * I)``."""
    n = S.n
    t = S.trace() / n
    rows = [[S.A[i][j] - (t if i == j else 0) for j in range(n)] for i in range(n)]
    return t, DiffSystem(rows, S.var)


@dataclass(frozen=True)
class WronskianMatrix:
    entries: tuple   # entries[i][j] = j-th solution differentiated i times

    @property
    def n(self):
        return len(self.entries)


def wronskian(solutions, n=None):
    """Wronskian matrix of ``n`` truncated series and its determinant."""
    sols = list(solutions)
    if n is None:
        n = len(sols)
    if len(sols) != n:
        raise DimensionError(f"expected {n} solutions, got {len(sols)}")
    rows = [sols]
    for i in range(1, n):
        prev = rows[-1]
        if any(f.order < 1 for f in prev):
            raise PrecisionError("not enough coefficients for the Wronskian")
        rows.append([f.derivative() for f in prev])
    W = WronskianMatrix(tuple(tuple(r) for r in rows))
    return W, _det(rows)


def _det(M):
    """Determinant by cofactor expansion along the first row (small n)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def system_residual(S, Y, order):
    """``Y' - A Y`` truncated to ``order`` for a vector of series ``Y``."""
    out = []
    for i in range(S.n):
        acc = Y[i].derivative()
        for j in range(S.n):
            a = S.A[i][j]
            if a:
                acc = acc - Y[j].scale_by(a)
        out.append(acc.truncated(order))
    return out


def constant_matrix(rows, var="x"):
    return DiffSystem([[Fraction(c) for c in r] for r in rows], var)
