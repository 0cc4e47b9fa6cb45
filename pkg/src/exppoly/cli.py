"""Command-line front end: ``exppoly <command> [options] ...``.

Every command prints a report to standard output (or ``--out FILE``) as
JSON (default, ``{"schema": 1, "command": ..., "result": ...}``) or CSV
(``--csv``, only for tabular reports).  Exit status is 0 on success, 2 on
usage errors (bad options, unparsable expressions) and 1 when a
computation fails.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np
import sympy as sp

from . import scalars as S
from .errors import ExpPolyError, ExpressionSyntaxError
from .expr import ExpPoly, RationalExpPoly, parse

SCHEMA = 1


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def parse_grid(text: str) -> np.ndarray:
    """``a:b:n`` (linear) or ``a:b:n:geo`` (geometric) radius grid."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise UsageError(f"grid must be a:b:n[:geo], got {text!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None
    spacing = parts[3] if len(parts) == 4 else "lin"
    if spacing not in ("lin", "geo"):
        raise UsageError("grid spacing must be 'geo' (or omitted for linear)")
    if n < 1 or a <= 0 or (n > 1 and b <= a):
        raise UsageError("grid needs 0 < a < b and n >= 1")
    if n == 1:
        return np.array([a])
    return np.geomspace(a, b, n) if spacing == "geo" else np.linspace(a, b, n)


def _expr(text: str, exact: bool) -> ExpPoly:
    return parse(text, exact=exact)


def _complex(text: str):
    try:
        return complex(text.replace("i", "j")) if "i" in text or "j" in text else complex(float(text))
    except ValueError:
        v = parse(text)
        if not v.is_constant():
            raise UsageError(f"{text!r} is not a constant") from None
        return complex(S.to_complex(v.constant_value()))


def _cplx(z) -> list:
    z = complex(S.to_complex(z)) if not isinstance(z, complex) else z
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_parse(args):
    f = _expr(args.expr, args.exact)
    out = {
        "input": args.expr,
        "canonical": str(f),
        "exact": f.exact,
        "order": f.order,
        "terms": [
            {"multiplier": [S.s_str(c) for c in t.multiplier.coeffs], "exponent": [S.s_str(c) for c in t.exponent.coeffs]}
            for t in f.terms
        ],
    }
    if f.order > 0:
        nf = f.normalize()
        out["normalized"] = {
            "q": nf.q,
            "frequencies": [S.s_str(w) for w in nf.frequencies],
            "multipliers": [str(m) for m in nf.multipliers],
            "tail": str(nf.tail),
        }
    return out


def cmd_hull(args):
    from .hullgeo import critical_rays, hull_of

    f = _expr(args.expr, args.exact)
    h, h0 = hull_of(f), hull_of(f, include_origin=True)
    return {
        "q": f.order,
        "C": h.circumference,
        "C0": h0.circumference,
        "hull": h.to_dict(),
        "hull_with_origin": h0.to_dict(),
        "critical_rays": critical_rays(f),
    }


def cmd_strips(args):
    from .strips import strips_report

    return strips_report(_expr(args.expr, args.exact))


def cmd_zeros(args):
    from .zerolab import Contour, isolate_zeros

    f = _expr(args.expr, args.exact)
    if args.rect is not None:
        region = Contour.rectangle(*args.rect)
    elif args.disc is not None:
        region = Contour.circle(args.disc)
    else:
        raise UsageError("zeros needs --rect X1 X2 Y1 Y2 or --disc R")
    return isolate_zeros(f, region, tol=args.tol)


def cmd_count(args):
    from .zerolab import count_report

    return count_report(_expr(args.expr, args.exact), _need_grid(args), integrate=args.integrate)


def cmd_nevanlinna(args):
    from .nevan import characteristic_grid

    return characteristic_grid(_expr(args.expr, args.exact), _need_grid(args))


def cmd_deficiency(args):
    from .nevan import deficiency

    a = "inf" if args.value.lower() in ("inf", "infinity", "oo") else _complex(args.value)
    return deficiency(_expr(args.expr, args.exact), a, _need_grid(args))


def cmd_factor(args):
    from .factor import ritt_factorization

    return ritt_factorization(_expr(args.expr, args.exact))


def cmd_divide(args):
    from .factor import divide

    q = divide(_expr(args.f, args.exact), _expr(args.g, args.exact), allow_rational=args.allow_rational)
    if q is None:
        return {"divisible": False, "quotient": None}
    return {"divisible": True, "quotient": str(q), "rational": isinstance(q, RationalExpPoly)}


def cmd_root(args):
    from .factor import dth_roots

    roots = dth_roots(_expr(args.expr, args.exact), args.degree)
    return {"degree": args.degree, "exists": bool(roots), "roots": [str(r) for r in roots]}


def cmd_annihilate(args):
    from .odelab import annihilator, order_bound, verify

    f = _expr(args.expr, args.exact)
    L = annihilator(f)
    out = L.to_dict()
    out["order_bound"] = order_bound(f)
    out["residual_zero"] = verify(L, f).is_zero if f.exact else None
    return out


def cmd_verify(args):
    from .odelab import parse_equation, residual_is_zero, verify

    eq = parse_equation(args.eq)
    sol = _expr(args.sol, args.exact)
    if args.den:
        sol = RationalExpPoly(sol, _expr(args.den, args.exact))
    r = verify(eq, sol)
    return {
        "equation": args.eq,
        "solution": str(sol),
        "residual": str(r),
        "residual_zero": residual_is_zero(r, args.tol if args.tol else 1e-9),
    }


def cmd_duality(args):
    from .odelab import duality_classify

    return duality_classify(_expr(args.f, args.exact), _expr(args.g, args.exact))


def cmd_oscillation(args):
    from .odelab import indicator_dominance, perimeter_condition, zero_free_base_A

    out: dict = {}
    A = _expr(args.A, args.exact)
    if A.order > 0 and len(A.normalize().frequencies) >= 2:
        out["perimeter_condition"] = perimeter_condition(A)
    if args.B is not None:
        ok, wit = indicator_dominance(A, _expr(args.B, args.exact))
        out["indicator_dominance"] = {"holds": ok, "witness": wit}
    if args.phi is not None:
        out["zero_free_base_A"] = str(zero_free_base_A(_expr(args.phi, args.exact)))
    return out


def cmd_zeta(args):
    from . import zetalab as Zl

    if args.partial is not None:
        f, label = Zl.partial_sum(args.partial), f"partial_sum({args.partial})"
    elif args.thinned is not None:
        try:
            ps, cs = args.thinned.split(":")
            spec = Zl.ThinnedSpec(tuple(int(x) for x in ps.split(",")), tuple(int(x) for x in cs.split(",")))
        except ValueError as exc:
            raise UsageError(f"--thinned expects p1,p2,...:N1,N2,... ({exc})") from None
        f, label = Zl.thinned_product(spec), f"thinned_product({args.thinned})"
    elif args.pi24:
        f, label = Zl.pi24(), "pi24"
    else:
        raise UsageError("zeta needs --partial M, --thinned P:N or --pi24")
    if not args.exact:
        f = f.to_float()
    on, off, zl = Zl.axis_zero_check(f, args.ymax, args.tol if args.tol else 1e-8)
    if args.format == "csv":
        return zl
    return {"function": label, "expression": str(f), "on_axis": on, "off_axis": off.total,
            "certified": zl.certified, "zeros": zl.to_dict()["zeros"]}


COMMANDS = {
    "parse": cmd_parse,
    "hull": cmd_hull,
    "strips": cmd_strips,
    "zeros": cmd_zeros,
    "count": cmd_count,
    "nevanlinna": cmd_nevanlinna,
    "deficiency": cmd_deficiency,
    "factor": cmd_factor,
    "divide": cmd_divide,
    "root": cmd_root,
    "annihilate": cmd_annihilate,
    "verify": cmd_verify,
    "duality": cmd_duality,
    "oscillation": cmd_oscillation,
    "zeta": cmd_zeta,
}


def _need_grid(args):
    if args.grid is None:
        raise UsageError(f"{args.command} needs --grid a:b:n[:geo]")
    return args.grid


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        return v if math.isfinite(v) else str(v)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, sp.Basic):
        return S.s_str(x)
    if hasattr(x, "to_dict"):
        return _jsonable(x.to_dict())
    return str(x)


def emit(report, fmt: str = "json", command: str = "") -> str:
    """Render a report as versioned JSON or CSV text."""
    if fmt == "csv":
        if not hasattr(report, "to_csv"):
            raise UsageError(f"CSV output is not available for {command or type(report).__name__}")
        return report.to_csv()
    body = report.to_dict() if hasattr(report, "to_dict") else report
    return json.dumps({"schema": SCHEMA, "command": command, "result": _jsonable(body)}, indent=2) + "\n"


# ---------------------------------------------------------------------------
# argument parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--exact", action=argparse.BooleanOptionalAction, default=True,
                        help="exact (symbolic) scalars; --no-exact uses floats")
    common.add_argument("--tol", type=float, default=None, help="tolerance (command specific)")
    common.add_argument("--grid", type=_grid_type, default=None, help="radius grid a:b:n[:geo]")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", default="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    common.add_argument("--out", default=None, help="write the report to FILE")

    p = argparse.ArgumentParser(prog="exppoly", description="Exponential polynomial toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = add("parse", "canonical form and normal form")
    s.add_argument("expr")
    s = add("hull", "convex hull of conjugated frequencies, circumferences, critical rays")
    s.add_argument("expr")
    s = add("strips", "zero-free regions and critical strips of an exponential sum")
    s.add_argument("expr")
    s = add("zeros", "isolate zeros in a rectangle or disc")
    s.add_argument("--rect", nargs=4, type=float, metavar=("X1", "X2", "Y1", "Y2"))
    s.add_argument("--disc", type=float, metavar="R")
    s.add_argument("expr")
    s = add("count", "zero counts n(r), N(r) against the circumference law")
    s.add_argument("--integrate", choices=("zeros", "jensen"), default="zeros")
    s.add_argument("expr")
    s = add("nevanlinna", "proximity, counting and characteristic functions")
    s.add_argument("expr")
    s = add("deficiency", "deficiency estimate of a value")
    s.add_argument("--value", default="0")
    s.add_argument("expr")
    s = add("factor", "Ritt factorization (constant multipliers, order 1)")
    s.add_argument("expr")
    s = add("divide", "exact division f/g")
    s.add_argument("--allow-rational", action="store_true")
    s.add_argument("f")
    s.add_argument("g")
    s = add("root", "d-th roots")
    s.add_argument("--degree", "-d", type=int, default=2)
    s.add_argument("expr")
    s = add("annihilate", "minimal linear ODE with polynomial coefficients")
    s.add_argument("expr")
    s = add("verify", "exact residual of an equation at a candidate solution")
    s.add_argument("--eq", required=True)
    s.add_argument("--sol", required=True)
    s.add_argument("--den", default=None, help="denominator of a quotient solution")
    s = add("duality", "duality classification of two exponential polynomials")
    s.add_argument("f")
    s.add_argument("g")
    s = add("oscillation", "oscillation predicates for f'' + A f = 0 type equations")
    s.add_argument("A")
    s.add_argument("--B", default=None)
    s.add_argument("--phi", default=None)
    s = add("zeta", "zeros of zeta partial sums relative to the imaginary axis")
    s.add_argument("--partial", type=int)
    s.add_argument("--thinned", help="primes:caps, e.g. 2,3:3,1")
    s.add_argument("--pi24", action="store_true")
    s.add_argument("--ymax", type=float, default=50.0)
    return p


def _grid_type(text):
    try:
        return parse_grid(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.tol is not None and not args.tol > 0:
        print("exppoly: error: --tol must be positive", file=stderr)
        return 2
    if args.command == "zeros" and args.tol is None:
        args.tol = 1e-10
    try:
        report = COMMANDS[args.command](args)
        text = emit(report, args.format, args.command)
    except (UsageError, ExpressionSyntaxError) as exc:
        print(f"exppoly {args.command}: usage error: {exc}", file=stderr)
        return 2
    except (ExpPolyError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"exppoly {args.command}: computation failed: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
