"""Command-line front end: ``holodep VERB ...``.

Exit status is 0 on success, 1 on a domain error, 2 on a usage or syntax error.
"""

import argparse
import json
import sys
from fractions import Fraction

from .errors import HolodepError, ParseError
from .hypergeo import (HypergeomSpec, classify_pair_with_0F1, hypergeom_operator,
                       hypergeom_series, singularity_profile)
from .newton import determining_monomials, newton_polygon, operator_at_infinity
from .ore import OreOperator, op_companion, op_convert, op_to_infinity
from .parsing import (parse_expression, parse_operator, parse_ratfunc, parse_series,
                      _parse_rational)
from .relations import IterIntInput, iterint_dependence, kolchin_detect, linear_relation_find
from .series import DEFAULT_ORDER, series_from_operator, series_solve_system
from .systems import (DiffSystem, sys_direct_sum, sys_dual, sys_sym_power, sys_tensor,
                      sys_trace_split)


class UsageError(Exception):
    pass


def _read(text):
    if text == "-":
        return sys.stdin.read()
    return text


def _rational(text):
    return _parse_rational(text, 1, 1)


def _spec_or_operator(text):
    v = parse_expression(_read(text))
    if isinstance(v, HypergeomSpec):
        return v, hypergeom_operator(v)
    if isinstance(v, OreOperator):
        return None, v
    raise UsageError("expected an operator or a pFq literal")


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload))
    else:
        print(text)


def _euler(L):
    if L.kind == "D":
        L, _ = op_convert(L, "delta")
    return L


# -- verbs ---------------------------------------------------------------------


def cmd_op(args):
    _, L = _spec_or_operator(args.expr)
    unit = None
    if args.convert:
        L, unit = op_convert(L, args.convert)
    if args.infinity:
        L = op_to_infinity(_euler(L))
    if args.companion:
        S = op_companion(L)
        _emit(args, str(S), {"matrix": S.to_json()})
        return
    payload = {"operator": L.to_str(), "order": L.order, "kind": L.kind, "var": L.var}
    text = L.to_str()
    if unit is not None:
        payload["unit"] = str(unit)
        if unit != 1:
            text += f"\nunit: {unit}"
    _emit(args, text, payload)


def _polygon_input(text):
    _, L = _spec_or_operator(text)
    L = _euler(L)
    M, k = operator_at_infinity(L)
    return M, k


def cmd_newton(args):
    M, _ = _polygon_input(args.expr)
    P = newton_polygon(M)
    _emit(args, str(P), P.to_json())


def cmd_detpoly(args):
    M, _ = _polygon_input(args.expr)
    slope = _rational(args.slope)
    R = determining_monomials(M, slope)
    lines = [f"char_poly: {R.char_poly.to_str('a')}"]
    lines.append("monomials: " + (", ".join(str(m) for m in R.monomials) or "none"))
    if R.residual is not None:
        lines.append(f"residual: {R.residual.to_str('a')}"
                     + (" (repeated roots)" if R.repeated_roots else ""))
    _emit(args, "\n".join(lines), R.to_json())


def _spec(text):
    v = parse_expression(_read(text))
    if not isinstance(v, HypergeomSpec):
        raise UsageError("expected a pFq literal such as 0F1[;1/3]")
    return v


def cmd_hyper(args):
    spec = _spec(args.spec)
    H = hypergeom_operator(spec)
    prof = singularity_profile(spec)
    pts = [{"point": s.point, "regular": s.regular} for s in prof.singular_points]
    desc = ", ".join(f"{s.point} ({'regular' if s.regular else 'irregular'})"
                     for s in prof.singular_points)
    _emit(args, f"operator: {H}\norder: {prof.order}\nsingular points: {desc}",
          {"operator": H.to_str(), "order": prof.order, "singular_points": pts})


def cmd_classify(args):
    spec = _spec(args.spec)
    c = classify_pair_with_0F1(spec)
    _emit(args, f"{c.branch.value} (sigma = {c.sigma})",
          {"branch": c.branch.value, "sigma": c.sigma})


def _matrix(text):
    try:
        rows = json.loads(_read(text))
    except json.JSONDecodeError as e:
        raise ParseError(f"bad JSON matrix: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise UsageError("a matrix is a JSON array of arrays")
    return DiffSystem([[parse_ratfunc(str(c)) for c in r] for r in rows])


def cmd_sys(args):
    S = _matrix(args.matrix)
    c = args.construct
    if c in ("sum", "tensor") and not args.other:
        raise UsageError(f"--construct {c} needs --with MATRIX")
    if c == "sum":
        R = sys_direct_sum(S, _matrix(args.other))
    elif c == "tensor":
        R = sys_tensor(S, _matrix(args.other))
    elif c == "dual":
        R = sys_dual(S)
    elif c == "sym":
        R = sys_sym_power(S, args.power)
    elif c == "trace":
        t, R = sys_trace_split(S)
        _emit(args, f"trace part: {t}\ntraceless: {R}",
              {"trace_part": str(t), "traceless": R.to_json()})
        return
    elif c == "solve":
        if args.init is None:
            raise UsageError("--construct solve needs --init")
        init = [_rational(v) for v in args.init.split(",")]
        Y = series_solve_system(S, init, args.order, _rational(args.base))
        _emit(args, "\n".join(str(y) for y in Y), [y.to_json() for y in Y])
        return
    else:
        R = S
    _emit(args, str(R), R.to_json())


def cmd_series(args):
    text = _read(args.expr)
    v = parse_expression(text)
    if isinstance(v, OreOperator):
        if args.init is None:
            raise UsageError("expanding an operator needs --init c0,c1,...")
        init = [_rational(c) for c in args.init.split(",")]
        s = series_from_operator(v, init, args.order).truncated(args.order)
    elif isinstance(v, HypergeomSpec):
        s = hypergeom_series(v).truncated(args.order)
    else:
        s = parse_series(text, args.order, _rational(args.base))
    _emit(args, str(s), s.to_json())


def _relation_output(args, rel, bounds):
    if rel is None:
        _emit(args, f"no relation with deg <= {bounds['deg']} to order {args.order}",
              {"coeffs": None, "remainder": None, "verified_order": args.order,
               "bounds": bounds})
        return
    _emit(args, str(rel), rel.to_json())


def cmd_relate(args):
    if not args.basis:
        raise UsageError("relate needs at least one --basis")
    base = _rational(args.base)
    T = parse_series(_read(args.target), args.order, base)
    B = [parse_series(_read(b), args.order, base) for b in args.basis]
    rel = linear_relation_find(T, B, args.deg, args.order)
    _relation_output(args, rel, {"deg": args.deg})


def cmd_kolchin(args):
    a, b = parse_ratfunc(_read(args.a)), parse_ratfunc(_read(args.b))
    rel = kolchin_detect(a, b, args.bound)
    if rel is None:
        _emit(args, f"no relation up to bound {args.bound}", None)
        return
    _emit(args, str(rel), rel.to_json())


def _iterint_input(text):
    parts = [p.strip() for p in text.split(";")]
    if len(parts) not in (2, 3):
        raise UsageError(f"--input expects 'h; n; c0,c1,...', got {text!r}")
    h = parse_ratfunc(parts[0])
    try:
        depth = int(parts[1])
    except ValueError:
        raise UsageError(f"depth must be an integer, got {parts[1]!r}") from None
    consts = [] if len(parts) < 3 or not parts[2] else [_rational(c) for c in parts[2].split(",")]
    return IterIntInput(h, depth, tuple(consts))


def cmd_iterint(args):
    if not args.input:
        raise UsageError("iterint needs at least one --input")
    inputs = [_iterint_input(s) for s in args.input]
    rel = iterint_dependence(inputs, _rational(args.base), args.deg, args.order)
    _relation_output(args, rel, {"deg": args.deg})


# -- argument parsing --------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--order", type=int, default=DEFAULT_ORDER,
                        help="series truncation order (default %(default)s)")
    common.add_argument("--base", default="0", help="expansion point (default 0)")

    p = argparse.ArgumentParser(prog="holodep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("op", parents=[common], help="parse, convert or transform an operator")
    s.add_argument("expr")
    s.add_argument("--convert", choices=["D", "delta"])
    s.add_argument("--infinity", action="store_true", help="substitute x = 1/t")
    s.add_argument("--companion", action="store_true", help="companion system")
    s.set_defaults(func=cmd_op)

    s = sub.add_parser("newton", parents=[common], help="Newton polygon at infinity")
    s.add_argument("expr")
    s.set_defaults(func=cmd_newton)

    s = sub.add_parser("detpoly", parents=[common], help="determining monomials at a slope")
    s.add_argument("expr")
    s.add_argument("--slope", required=True)
    s.set_defaults(func=cmd_detpoly)

    s = sub.add_parser("hyper", parents=[common], help="hypergeometric operator and profile")
    s.add_argument("spec")
    s.set_defaults(func=cmd_hyper)

    s = sub.add_parser("classify", parents=[common], help="relation branch with 0F1")
    s.add_argument("spec")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("sys", parents=[common], help="constructions on matrix systems")
    s.add_argument("matrix", help="JSON array of rational-function strings")
    s.add_argument("--construct", default="show",
                   choices=["show", "sum", "tensor", "dual", "sym", "trace", "solve"])
    s.add_argument("--with", dest="other")
    s.add_argument("--power", type=int, default=2)
    s.add_argument("--init")
    s.set_defaults(func=cmd_sys)

    s = sub.add_parser("series", parents=[common], help="series expansion")
    s.add_argument("expr")
    s.add_argument("--init")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("relate", parents=[common], help="linear relation over Q(x)")
    s.add_argument("--target", required=True)
    s.add_argument("--basis", action="append", default=[])
    s.add_argument("--deg", type=int, default=2)
    s.set_defaults(func=cmd_relate)

    s = sub.add_parser("kolchin", parents=[common], help="f^m g^n in Q(x) for f'=af, g'=bg")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--bound", type=int, default=10)
    s.set_defaults(func=cmd_kolchin)

    s = sub.add_parser("iterint", parents=[common], help="iterated-integral dependence")
    s.add_argument("--input", action="append", default=[],
                   help="'h; n; c0,c1,...' with f^(n) = h and f^(i)(base) = c_i")
    s.add_argument("--deg", type=int, default=4)
    s.set_defaults(func=cmd_iterint)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except HolodepError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
