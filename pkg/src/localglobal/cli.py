"""Command-line front end.

Exit codes: 0 success, 1 domain error (error class name on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import lindioph, quadforms
from .errors import LocalGlobalError
from .modular import crt, primes_between
from .padic import PAdicNumber, hensel_lift, padic_log, teichmuller
from .places import Place

DEFAULT_PREC = 20
CURVE_ENV = "LOCALGLOBAL_CURVE_FILE"


class UsageError(Exception):
    pass


def default_prec() -> int:
    raw = os.environ.get("LOCALGLOBAL_PREC")
    if raw is None:
        return DEFAULT_PREC
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"LOCALGLOBAL_PREC must be an integer, got {raw!r}") from None


def fmt_float(x) -> str:
    return f"{float(x):.10g}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected a rational num/den, got {text!r}") from None


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"expected a prime range A..B, got {text!r}")
    return int(m.group(1)), int(m.group(2))


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


def parse_polynomial(text: str) -> list[int]:
    """Integer polynomial in x, e.g. ``x^4 - 1`` or ``3*x^2+2x-5``, as
    coefficients from the constant term up."""
    s = text.replace(" ", "")
    if not s:
        raise UsageError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise UsageError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        if pos and not m.group(1):
            raise UsageError(f"missing sign in polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        e = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
    return [coeffs.get(i, 0) for i in range(max(coeffs) + 1)]


# --- curve state -----------------------------------------------------------------


def curve_state_path() -> Path:
    return Path(os.environ.get(CURVE_ENV, Path.home() / ".localglobal_curve"))


def load_curve(args):
    from .elliptic import WeierstrassCurve

    if args.curve:
        text = args.curve
    else:
        path = curve_state_path()
        if not path.exists():
            raise UsageError("no curve set; run 'ec init a1 a2 a3 a4 a6' or pass --curve")
        text = path.read_text()
    try:
        return WeierstrassCurve.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad curve {text!r}: {exc}") from None


# --- handlers: each returns (text, json-able data) ---------------------------------


def cmd_padic_expand(args):
    x = parse_rational(args.x)
    prec = args.prec if args.prec is not None else default_prec()
    if args.primes:
        lo, hi = parse_range(args.primes)
        lines, data = [], {}
        for p in primes_between(lo, hi):
            s = str(PAdicNumber.from_rational(x.numerator, x.denominator, p, prec))
            lines.append(f"p={p},{args.x}={s}")
            data[str(p)] = s
        return "\n".join(lines), data
    if args.p is None:
        raise UsageError("padic expand needs -p P or --primes A..B")
    s = str(PAdicNumber.from_rational(x.numerator, x.denominator, args.p, prec))
    return s, s


def cmd_padic_log(args):
    x = parse_rational(args.x)
    prec = args.prec if args.prec is not None else default_prec()
    u = PAdicNumber.from_rational(x.numerator, x.denominator, args.p, prec)
    s = str(padic_log(u))
    return s, s


def cmd_padic_ord(args):
    x = parse_rational(args.x)
    if x == 0:
        return "inf", None
    from .padic import valuation_abs

    v, norm = valuation_abs(x.numerator, x.denominator, args.p)
    return f"{v} {norm}", {"ord": v, "abs": str(norm)}


def cmd_teich(args):
    prec = args.prec if args.prec is not None else default_prec()
    s = str(teichmuller(args.x, args.p, prec))
    return s, s


def cmd_hensel(args):
    prec = args.prec if args.prec is not None else default_prec()
    coeffs = parse_polynomial(args.poly)
    s = str(hensel_lift(coeffs, args.alpha0, prec, p=args.p))
    return s, s


def cmd_hilbert(args):
    a, b = parse_rational(args.a), parse_rational(args.b)
    if args.place is None:
        prod = quadforms.hilbert_product(a, b)
        lines = [f"{v}: {s:+d}" for v, s in prod.entries]
        lines.append(f"product: {prod.product:+d}")
        return "\n".join(lines), {
            "places": {str(v): s for v, s in prod.entries},
            "product": prod.product,
        }
    try:
        place = Place.parse(args.place)
    except ValueError:
        raise UsageError(f"expected a prime or 'inf', got {args.place!r}") from None
    s = quadforms.hilbert_symbol(a, b, place)
    return f"{s:+d}", s


def cmd_qform_solve(args):
    x, y, z = quadforms.solve_ternary(args.a, args.b, args.c)
    return f"{x} {y} {z}", [x, y, z]


def cmd_qform_local(args):
    verdict = quadforms.ternary_represents_zero(args.a, args.b, args.c)
    lines = [f"{v}: {s:+d}" for v, s in verdict.per_place]
    lines.append("represents zero" if verdict.represents_zero else "no rational zero")
    return "\n".join(lines), {
        "represents_zero": verdict.represents_zero,
        "places": {str(v): s for v, s in verdict.per_place},
    }


def cmd_qform_table(args):
    reps, table = quadforms.hilbert_table(args.p)
    return quadforms.format_hilbert_table(args.p), {"representatives": reps, "table": table}


def _read_system(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return lindioph.parse_matrix(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_linsys(args):
    A, b = _read_system(args.file)
    if args.action == "snf":
        snf = lindioph.smith_normal_form(A)
        text = "\n".join(
            [
                "D", lindioph.format_matrix(snf.D),
                "U", lindioph.format_matrix(snf.U),
                "V", lindioph.format_matrix(snf.V),
                "divisors " + " ".join(map(str, snf.divisors)),
            ]
        )
        return text, {"D": snf.D, "U": snf.U, "V": snf.V, "divisors": list(snf.divisors)}
    if b is None:
        raise UsageError("the input file has no right-hand side b")
    if args.action == "solve":
        sol = lindioph.solve_integer_system(A, b)
        if not sol.solvable:
            text = f"unsolvable (row {sol.failing_index}, modulus {sol.witness_modulus})"
            return text, {"solvable": False, "failing_index": sol.failing_index,
                          "witness_modulus": sol.witness_modulus}
        lines = ["particular " + " ".join(map(str, sol.particular))]
        lines += ["kernel " + " ".join(map(str, v)) for v in sol.lattice_basis]
        return "\n".join(lines), {"solvable": True, "particular": sol.particular,
                                  "lattice_basis": sol.lattice_basis}
    report = lindioph.solvable_all_moduli(A, b, range(2, args.max_modulus + 1))
    bad = [N for N, ok in report.per_modulus.items() if not ok]
    lines = [
        f"integer solvable: {'yes' if report.integer_solvable else 'no'}",
        "unsolvable moduli: " + (" ".join(map(str, bad)) if bad else "none"),
        f"consistent: {'yes' if report.consistent else 'no'}",
    ]
    return "\n".join(lines), {"integer_solvable": report.integer_solvable,
                              "unsolvable_moduli": bad, "consistent": report.consistent}


def cmd_crt(args):
    pairs = []
    for tok in args.congruences:
        m = re.fullmatch(r"(-?\d+):(\d+)", tok)
        if not m:
            raise UsageError(f"expected residue:modulus, got {tok!r}")
        pairs.append((int(m.group(1)), int(m.group(2))))
    a, N = crt(pairs)
    return f"{a} mod {N}", {"residue": a, "modulus": N}


def cmd_ec_init(args):
    from .elliptic import WeierstrassCurve

    try:
        E = WeierstrassCurve.parse(" ".join(args.coeffs))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad curve: {exc}") from None
    if E.is_singular():
        from .errors import SingularCurve

        raise SingularCurve(f"{E} has zero discriminant")
    curve_state_path().write_text(E.bracket() + "\n")
    return E.bracket(), E.bracket()


def cmd_ec_disc(args):
    d = load_curve(args).discriminant
    return str(d), str(d)


def cmd_ec_count(args):
    from .elliptic import count_points_mod_p

    n = count_points_mod_p(load_curve(args), args.p)
    return str(n), n


def cmd_ec_ap(args):
    from .elliptic import ap

    E = load_curve(args)
    values = {p: ap(E, p) for p in primes_between(2, args.pmax)}
    return "\n".join(f"{p} {v}" for p, v in values.items()), {str(p): v for p, v in values.items()}


def cmd_ec_torsion(args):
    from .elliptic import torsion_subgroup

    T = torsion_subgroup(load_curve(args))
    pts = [str(P) for P in T.points]
    return f"{T}\n" + "\n".join(pts), {"group": str(T), "invariants": list(T.invariants), "points": pts}


def _profile(args):
    from .elliptic import LSeriesProfile

    return LSeriesProfile.for_curve(load_curve(args), args.conductor, args.root_number)


def cmd_ec_lvalue(args):
    from .elliptic import l_value

    prof = _profile(args)
    v = l_value(prof, args.s, mode=args.mode, terms=args.terms, cut=args.cut)
    out = fmt_float(v)
    return out, float(out)


def cmd_ec_rank(args):
    from .elliptic import rank_estimate

    v = rank_estimate(_profile(args), args.s)
    out = fmt_float(v)
    return out, float(out)


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="localglobal", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    padic = sub.add_parser("padic", help="p-adic expansions").add_subparsers(dest="action", required=True)
    p = padic.add_parser("expand", help="expansion of a rational num/den")
    p.add_argument("x")
    p.add_argument("-p", type=int)
    p.add_argument("--primes", help="prime range A..B")
    p.add_argument("--prec", type=int, help="absolute precision N in O(p^N)")
    p.set_defaults(func=cmd_padic_expand)
    p = padic.add_parser("log", help="p-adic logarithm of a principal unit")
    p.add_argument("x")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--prec", type=int)
    p.set_defaults(func=cmd_padic_log)
    p = padic.add_parser("ord", help="valuation and absolute value")
    p.add_argument("x")
    p.add_argument("-p", type=int, required=True)
    p.set_defaults(func=cmd_padic_ord)

    p = sub.add_parser("teich", help="Teichmuller representative")
    p.add_argument("x", type=int)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--prec", type=int)
    p.set_defaults(func=cmd_teich)

    p = sub.add_parser("hensel", help="Hensel-lift a root of an integer polynomial")
    p.add_argument("poly", help="polynomial in x, e.g. 'x^4-1'")
    p.add_argument("alpha0", type=int)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--prec", type=int)
    p.set_defaults(func=cmd_hensel)

    p = sub.add_parser("hilbert", help="Hilbert symbol (a,b)_v, or all places")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("place", nargs="?", help="prime or 'inf'")
    p.set_defaults(func=cmd_hilbert)

    qf = sub.add_parser("qform", help="ternary forms a x^2 + b y^2 - c z^2").add_subparsers(
        dest="action", required=True
    )
    for name, func in (("solve", cmd_qform_solve), ("local", cmd_qform_local)):
        p = qf.add_parser(name)
        for k in "abc":
            p.add_argument(k, type=int)
        p.set_defaults(func=func)
    p = qf.add_parser("table", help="Hilbert symbol table at p")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_qform_table)

    p = sub.add_parser("linsys", help="integer linear systems from a matrix file")
    p.add_argument("action", choices=["snf", "solve", "modcheck"])
    p.add_argument("file", help="path or '-' for stdin")
    p.add_argument("--max-modulus", type=int, default=30)
    p.set_defaults(func=cmd_linsys)

    p = sub.add_parser("crt", help="Chinese remainder, arguments residue:modulus")
    p.add_argument("congruences", nargs="+")
    p.set_defaults(func=cmd_crt)

    ec = sub.add_parser("ec", help="elliptic curves").add_subparsers(dest="action", required=True)
    p = ec.add_parser("init", help="set the current curve: a1 a2 a3 a4 a6 or [a1,a2,a3,a4,a6]")
    p.add_argument("coeffs", nargs="+")
    p.set_defaults(func=cmd_ec_init)

    def curve_cmd(name, func, help_text):
        q = ec.add_parser(name, help=help_text)
        q.add_argument("--curve", help="curve in bracket form, overriding the saved one")
        q.set_defaults(func=func)
        return q

    curve_cmd("disc", cmd_ec_disc, "discriminant")
    curve_cmd("count", cmd_ec_count, "#E(F_p)").add_argument("p", type=int)
    curve_cmd("ap", cmd_ec_ap, "a_p for p <= pmax").add_argument("pmax", type=int)
    curve_cmd("torsion", cmd_ec_torsion, "rational torsion subgroup")
    for name, func in (("lvalue", cmd_ec_lvalue), ("rank", cmd_ec_rank)):
        q = curve_cmd(name, func, "L(E, s)" if name == "lvalue" else "analytic rank estimate")
        if name == "lvalue":
            q.add_argument("s", type=float)
            q.add_argument("--mode", choices=["analytic", "euler"], default="analytic")
            q.add_argument("--terms", type=int)
            q.add_argument("--cut", type=int, default=10**4, help="prime cut for the Euler product")
        else:
            q.add_argument("--s", type=float, default=1.0001)
        q.add_argument("--conductor", type=int)
        q.add_argument("--root-number", type=int, choices=[-1, 1])
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # --json is accepted anywhere on the command line
    as_json = "--json" in argv
    argv = [a for a in argv if a != "--json"]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, data = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except LocalGlobalError as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return 1
    if as_json:
        print(json.dumps({"command": args.command, "result": data, "text": text}, sort_keys=True), file=stdout)
    else:
        print(text, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
