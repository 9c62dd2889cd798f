"""Dense exact linear algebra over Q (Gauss-Jordan on Fractions)."""

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import DimensionError


def _check_rect(M):
    if not M:
        return 0, 0
    ncols = len(M[0])
    for row in M:
        if len(row) != ncols:
            raise DimensionError("ragged matrix")
    return len(M), ncols


def rref(M):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    nrows, ncols = _check_rect(M)
    A = [[Fraction(c) for c in row] for row in M]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        prow = [v * inv for v in A[r]]
        A[r] = prow
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                row = A[i]
                A[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return A, pivots


def _normalize_sign(v):
    for c in v:
        if c != 0:
            return v if c > 0 else [-a for a in v]
    return v


def nullspace(M, ncols=None):
    """Basis of ``{v : M v = 0}``, each vector with first nonzero entry positive.

    ``ncols`` is required only when ``M`` has no rows.
    """
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(_normalize_sign(v))
    return basis


def solve(M, b):
    """One solution of ``M v = b`` or None when inconsistent."""
    nrows, ncols = _check_rect(M)
    if len(b) != nrows:
        raise DimensionError(f"matrix has {nrows} rows but right side has {len(b)}")
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        v[pc] = row[ncols]
    return v


@dataclass(frozen=True)
class LinearSolution:
    particular: list = None      # None means the system is inconsistent
    nullspace: list = field(default_factory=list)

    @property
    def consistent(self):
        return self.particular is not None


def linear_solve(M, b):
    """Full solution set of ``M v = b``: a particular solution plus the kernel."""
    nrows, ncols = _check_rect(M)
    if len(b) != nrows:
        raise DimensionError(f"matrix has {nrows} rows but right side has {len(b)}")
    return LinearSolution(solve(M, b), nullspace(M, ncols))


def matvec(M, v):
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M]
