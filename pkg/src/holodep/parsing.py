"""Recursive-descent parser for operator, rational-function and pFq expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*          # "*" composes operators
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := NUMBER | IDENT | "(" expr ")" | PFQ
    PFQ    := INT "F" INT "[" list? ";" list? "]"

Identifiers are ``x``, ``t``, ``w`` (variables) and ``Dx``, ``delta``
(derivations).  A bare ``delta`` lives in whichever variable the rest of
the expression uses, defaulting to ``x``.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import RationalFunction
from .errors import ParseError, ZeroDivisorError
from .hypergeo import HypergeomSpec
from .ore import OreOperator

VARIABLES = ("x", "t", "w")
GENERATORS = {"Dx": ("D", "x"), "delta": ("delta", None)}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<pfq>\d+F\d+\[[^\]]*\])
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),;\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    pos, line, col0 = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - col0 + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col0 = m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, m.start() - col0 + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - col0 + 1))
    return tokens


# AST nodes are plain tuples: ("num", Fraction) ("var", name) ("gen", name)
# ("pfq", spec) ("neg", a) ("add"|"sub"|"mul"|"div", a, b) ("pow", a, int)


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.open_parens = []

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        if tok.kind == "eof" and self.open_parens:
            p = self.open_parens[-1]
            raise ParseError("unclosed parenthesis", p.line, p.column)
        raise ParseError(msg, tok.line, tok.column)

    def parse(self):
        node = self.expr()
        if self.peek().kind != "eof":
            self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/") and self.peek().kind == "op":
            op = self.take().text
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if t.text == "+" else ("neg", inner)
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek().text == "^" and self.peek().kind == "op":
            self.take()
            sign = 1
            if self.peek().text in ("-", "+") and self.peek().kind == "op":
                sign = -1 if self.take().text == "-" else 1
            t = self.peek()
            if t.kind != "num":
                self.error("expected an integer exponent")
            self.take()
            node = ("pow", node, sign * int(t.text))
            if self.peek().text == "^":
                self.error("chained exponents need parentheses")
        return node

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.take()
            return ("num", Fraction(int(t.text)))
        if t.kind == "ident":
            self.take()
            if t.text in VARIABLES:
                return ("var", t.text)
            if t.text in GENERATORS:
                return ("gen", t.text)
            raise ParseError(f"unknown identifier {t.text!r}", t.line, t.column)
        if t.kind == "pfq":
            self.take()
            return ("pfq", parse_pfq(t.text, t.line, t.column))
        if t.kind == "op" and t.text == "(":
            self.take()
            self.open_parens.append(t)
            node = self.expr()
            if self.peek().text != ")":
                self.error("expected ')'")
            self.take()
            self.open_parens.pop()
            return node
        if t.kind == "eof":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.text!r}")


_RATIONAL = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def _parse_rational(s, line, column):
    m = _RATIONAL.match(s)
    if not m:
        raise ParseError(f"bad rational parameter {s.strip()!r}", line, column)
    den = int(m.group(2) or 1)
    if den == 0:
        raise ParseError("zero denominator in parameter", line, column)
    return Fraction(int(m.group(1)), den)


def parse_pfq(text, line=1, column=1):
    m = re.fullmatch(r"(\d+)F(\d+)\[([^\];]*);([^\];]*)\]", text)
    if not m:
        raise ParseError("a pFq literal needs the form pFq[a1,..;b1,..]", line, column)
    p, q = int(m.group(1)), int(m.group(2))

    def items(s):
        s = s.strip()
        return [] if not s else [_parse_rational(v, line, column) for v in s.split(",")]

    alpha, beta = items(m.group(3)), items(m.group(4))
    if len(alpha) != p or len(beta) != q:
        raise ParseError(f"{p}F{q} needs {p} upper and {q} lower parameters, "
                         f"got {len(alpha)} and {len(beta)}", line, column)
    return HypergeomSpec(alpha, beta)


def parse_ast(text):
    return _Parser(text).parse()


def _walk(node):
    yield node
    for child in node[1:]:
        if isinstance(child, tuple):
            yield from _walk(child)


def _context(node):
    variables = {n[1] for n in _walk(node) if n[0] == "var"}
    gens = {n[1] for n in _walk(node) if n[0] == "gen"}
    if len(gens) > 1:
        raise ParseError("mixed derivation kinds in one expression")
    if "Dx" in gens:
        variables.add("x")
    if len(variables) > 1:
        raise ParseError(f"expression mixes variables {sorted(variables)}")
    var = variables.pop() if variables else "x"
    if "Dx" in gens and var != "x":
        raise ParseError("Dx only acts in the variable x")
    kind = "D" if "Dx" in gens else "delta"
    return var, kind


def _as_op(v, kind, var):
    if isinstance(v, OreOperator):
        return v
    return OreOperator.scalar(v, kind, var)


def _eval(node, var, kind, leaf):
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "var":
        return RationalFunction.gen(node[1])
    if tag == "gen":
        return OreOperator.generator(kind, var)
    if tag == "pfq":
        return leaf(node[1])
    if tag == "neg":
        return -_eval(node[1], var, kind, leaf)
    if tag == "pow":
        base = _eval(node[1], var, kind, leaf)
        n = node[2]
        if isinstance(base, OreOperator) and n < 0:
            raise ParseError("negative powers of operators are not defined")
        if isinstance(base, Fraction) and n < 0 and base == 0:
            raise ZeroDivisorError()
        return base ** n
    a = _eval(node[1], var, kind, leaf)
    b = _eval(node[2], var, kind, leaf)
    if tag == "div":
        if isinstance(b, OreOperator):
            raise ParseError("division by an operator")
        if not b:
            raise ZeroDivisorError()
        if isinstance(a, OreOperator):
            return a.left_scale(1 / b)
        return a / b
    if isinstance(a, OreOperator) or isinstance(b, OreOperator):
        a, b = _as_op(a, kind, var), _as_op(b, kind, var)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    return a * b


def _no_pfq(spec):
    raise ParseError("a pFq literal cannot be combined with other terms")


def parse_expression(text):
    """Parse to an ``OreOperator``, a ``RationalFunction`` or a ``HypergeomSpec``."""
    node = parse_ast(text)
    if node[0] == "pfq":
        return node[1]
    var, kind = _context(node)
    value = _eval(node, var, kind, _no_pfq)
    if isinstance(value, Fraction):
        return RationalFunction.constant(value, var)
    return value


def parse_operator(text):
    v = parse_expression(text)
    if isinstance(v, HypergeomSpec):
        from .hypergeo import hypergeom_operator
        return hypergeom_operator(v)
    if isinstance(v, RationalFunction):
        return OreOperator.scalar(v, "delta", v.var)
    return v


def parse_ratfunc(text):
    v = parse_expression(text)
    if not isinstance(v, RationalFunction):
        raise ParseError("expected a rational function")
    return v


def parse_series(text, order, base=0):
    """A series expression: rational functions combined with pFq literals (at 0)."""
    from .hypergeo import hypergeom_series
    from .series import TruncSeries

    node = parse_ast(text)
    if any(n[0] == "gen" for n in _walk(node)):
        raise ParseError("derivations are not allowed in a series expression")
    var, kind = _context(node)
    if var != "x":
        raise ParseError("series expressions use the variable x")
    has_pfq = any(n[0] == "pfq" for n in _walk(node))
    if has_pfq and Fraction(base) != 0:
        raise ParseError("pFq series are expanded at 0; use --base 0")

    def leaf(spec):
        return hypergeom_series(spec).truncated(order)

    value = _eval(node, var, kind, leaf)
    if isinstance(value, TruncSeries):
        return value
    if isinstance(value, Fraction):
        value = RationalFunction.constant(value)
    return TruncSeries.from_ratfunc(value, order, base)
