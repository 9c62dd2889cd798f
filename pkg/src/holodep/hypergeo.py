"""Generalized hypergeometric operators, series and classifiers."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebra import Poly, RationalFunction
from .errors import HolodepError
from .ore import OreOperator
from .series import HoloSeries


class HypergeomSpecError(HolodepError, ValueError):
    pass


def _fmt(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class HypergeomSpec:
    alpha: tuple = ()
    beta: tuple = ()

    def __post_init__(self):
        a = tuple(Fraction(v) for v in self.alpha)
        b = tuple(Fraction(v) for v in self.beta)
        for v in b:
            if v.denominator == 1 and v <= 0:
                raise HypergeomSpecError(f"beta is a nonpositive integer ({_fmt(v)})")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def p(self):
        return len(self.alpha)

    @property
    def q(self):
        return len(self.beta)

    @property
    def sigma(self):
        return self.q - self.p + 1

    def to_str(self):
        return f"{self.p}F{self.q}[{','.join(map(_fmt, self.alpha))};" \
               f"{','.join(map(_fmt, self.beta))}]"

    def __str__(self):
        return self.to_str()


def _linear(c):
    """The constant-coefficient operator ``delta + c`` as a polynomial in delta."""
    return Poly((c, 1), "d")


def hypergeom_operator(spec):
    """``delta prod(delta + beta_k - 1) - x prod(delta + alpha_k)``."""
    left = Poly((0, 1), "d")
    for b in spec.beta:
        left = left * _linear(b - 1)
    right = Poly((1,), "d")
    for a in spec.alpha:
        right = right * _linear(a)
    x = RationalFunction.gen("x")
    L = OreOperator.from_theta_poly(left, "delta", "x")
    R = OreOperator.from_theta_poly(right, "delta", "x")
    return L - R.left_scale(x)


class HypergeometricSeries(HoloSeries):
    """``pFq`` at 0, computed by the term ratio rather than the operator recurrence."""

    def __init__(self, spec):
        self.spec = spec
        super().__init__(hypergeom_operator(spec), {0: 1})

    def _setup(self):
        self.recurrence = None
        self.indicial_roots = [0]

    def _next(self, k, cs):
        if k == 0:
            return Fraction(1)
        num = Fraction(1)
        for a in self.spec.alpha:
            num *= a + k - 1
        den = Fraction(k)
        for b in self.spec.beta:
            den *= b + k - 1
        return cs[k - 1] * num / den

    def __repr__(self):
        return f"HypergeometricSeries({self.spec})"


def hypergeom_series(spec, order=None):
    s = HypergeometricSeries(spec)
    if order is not None:
        s.coefficient(order)
    return s


@dataclass(frozen=True)
class SingularPoint:
    point: str
    regular: bool


@dataclass(frozen=True)
class SingularityProfile:
    order: int
    singular_points: tuple


def singularity_profile(spec):
    p, q = spec.p, spec.q
    order = max(q + 1, p)
    if q + 1 == p:
        pts = (SingularPoint("0", True), SingularPoint("1", True), SingularPoint("inf", True))
    elif q + 1 > p:
        pts = (SingularPoint("0", True), SingularPoint("inf", False))
    else:
        pts = (SingularPoint("0", False), SingularPoint("inf", True))
    return SingularityProfile(order, pts)


class Branch(str, Enum):
    LINEAR_IN_0F1 = "LinearIn0F1"
    ONLY_IF_ALGEBRAIC = "OnlyIfAlgebraic"
    NO_DEPENDENCE = "NoDependencePossible"


@dataclass(frozen=True)
class PairClassification:
    branch: Branch
    sigma: int


def classify_pair_with_0F1(spec):
    """Which relation with a 0F1 function the structure of pFq permits.

    Purely structural in ``(p, q)``: the algebraic branch ``q + 1 = p`` is
    reported, not decided.
    """
    sigma = spec.sigma
    if sigma == 2:
        return PairClassification(Branch.LINEAR_IN_0F1, sigma)
    if sigma == 0:
        return PairClassification(Branch.ONLY_IF_ALGEBRAIC, sigma)
    return PairClassification(Branch.NO_DEPENDENCE, sigma)
