"""Command-line entry point.

Exit codes: 0 success, 1 failed verification or singular computation,
2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import schrod, tilde, verify
from .errors import ComputationError, InvalidInput, NotPowerWeight, ShapeInvError, Unsupported
from .family import Family, build_family, degree_budget, eigenvalue, power_weight_exponent
from .ladder import associated

VALUE_FLAGS = ("--alpha", "--beta", "--gamma")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x: float) -> str:
    """17 significant digits; integral values print without a decimal point."""
    x = float(x)
    if x == 0:
        return "0"
    return format(x, ".17g")


def dump_json(obj) -> str:
    """JSON with floats at 17 significant digits and non-finite values as null."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dump_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dump_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _tol_override(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep or name not in verify.TOLERANCES:
        raise argparse.ArgumentTypeError(
            f"expected NAME=VALUE with NAME in {sorted(verify.TOLERANCES)}")
    return name, float(value)


def _family_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--case", required=required, help="one, s, one-minus-s2, s2-minus-1, s2, s2-plus-1")
    p.add_argument("--alpha", type=rational, default=None, help="rational, e.g. -2 or -7/2")
    p.add_argument("--beta", type=rational, default=Fraction(0))
    p.add_argument("--gamma", type=rational, default=None, help="shift for power-weight families")
    p.add_argument("--tilde", action="store_true", help="use the shifted operators")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shapeinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fam = sub.add_parser("family", help="inspect a family")
    fam_sub = fam.add_subparsers(dest="action", required=True, parser_class=_Parser)
    show = fam_sub.add_parser("show", help="weight, interval and cutoff")
    _family_args(show)
    show.add_argument("--format", choices=("text", "json"), default="text")

    poly = sub.add_parser("poly", help="exact coefficients of Phi_l or its m-th derivative")
    _family_args(poly)
    poly.add_argument("--l", type=int, required=True)
    poly.add_argument("--m", type=int, default=0)

    pot = sub.add_parser("potential", help="tabulate V_m and W_m")
    _family_args(pot)
    pot.add_argument("--m", type=int, default=0)
    pot.add_argument("--grid", type=int, default=201)
    pot.add_argument("--format", choices=("csv", "json"), default="csv")

    spec = sub.add_parser("spectrum", help="eigenvalues for l = 0..lmax")
    _family_args(spec)
    spec.add_argument("--lmax", type=int, required=True)

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("suite", choices=verify.SUITES + ("all",))
    _family_args(ver, required=False)
    ver.add_argument("--lmax", type=int, default=None)
    ver.add_argument("--quick", action="store_true")
    ver.add_argument("--tol", type=_tol_override, action="append", default=[],
                     metavar="NAME=VALUE")
    return parser


def normalize_argv(argv: list[str]) -> list[str]:
    """Glue ``--alpha -1/2`` into ``--alpha=-1/2`` so argparse keeps the value."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# -- commands --------------------------------------------------------------

def _shifted(args) -> bool:
    return bool(args.tilde or args.gamma is not None)


def _family(args) -> Family:
    if args.alpha is None:
        raise InvalidInput("--alpha is required")
    mode = "tilde" if _shifted(args) else "strict"
    return build_family(args.case, args.alpha, args.beta, mode=mode)


def _tilde_family(args, f: Family):
    gamma = args.gamma if args.gamma is not None else Fraction(1)
    return tilde.make_tilde(f, gamma)


def cmd_family_show(args) -> tuple[int, str]:
    f = _family(args)
    L = degree_budget(f)
    k = power_weight_exponent(f)
    a, b = f.interval
    report = {
        "case": f.case.value,
        "alpha": str(f.alpha),
        "beta": str(f.beta),
        "sigma": str(f.sigma),
        "tau": str(f.tau),
        "interval": [fmt(a) if math.isfinite(a) else ("-inf" if a < 0 else "inf"),
                     fmt(b) if math.isfinite(b) else "inf"],
        "rho": f.weight.formula(),
        "Lambda": "inf" if f.cutoff is None else str(f.cutoff),
        "L": None if L is None else L,
        "k": None if k is None else str(k),
    }
    if args.format == "json":
        return 0, dump_json(report)
    lines = [f"case     {report['case']}",
             f"alpha    {report['alpha']}",
             f"beta     {report['beta']}",
             f"sigma    {report['sigma']}",
             f"tau      {report['tau']}",
             f"interval ({report['interval'][0]}, {report['interval'][1]})",
             f"rho      {report['rho']}",
             f"Lambda   {report['Lambda']}",
             f"L        {'unbounded' if L is None else L}",
             f"k        {'none' if k is None else report['k']}"]
    return 0, "\n".join(lines)


def cmd_poly(args) -> tuple[int, str]:
    f = _family(args)
    if args.l < 0 or args.m < 0 or args.m > args.l:
        raise InvalidInput("need 0 <= m <= l")
    if not f.in_range(args.l):
        raise InvalidInput(f"l={args.l} is not below the cutoff {f.cutoff}")
    p = associated(f, args.l, args.m).p
    return 0, dump_json({"l": args.l, "m": args.m, "coeffs": p.to_strings()})


def cmd_potential(args) -> tuple[int, str]:
    if args.grid < 2:
        raise InvalidInput("--grid must be at least 2")
    f = _family(args)
    m = args.m
    if m < 0:
        raise InvalidInput("m must be non-negative")
    if not f.in_range(m):
        raise InvalidInput(f"m={m} is not below the cutoff {f.cutoff}")
    if _shifted(args):
        tf = _tilde_family(args, f)
        x = tilde.tilde_grid(tf, m, m, args.grid)
        v = tilde.tilde_potential(tf, m, x)
        w = tilde.tilde_superpotential(tf, m, x)
        lam = tilde.tilde_lambda(tf, m)
        cols = {"x": x, "V": v, "W": w, "lambda_tilde": np.full_like(x, lam)}
    else:
        x = schrod.schrodinger_grid(f, m, m, args.grid)
        cols = {"x": x, "V": schrod.potential(f, m, x), "W": schrod.superpotential(f, m, x)}
    if args.format == "json":
        return 0, dump_json({k: [float(t) for t in v] for k, v in cols.items()})
    rows = [",".join(cols)]
    rows += [",".join(fmt(cols[k][i]) for k in cols) for i in range(len(x))]
    return 0, "\n".join(rows)


def cmd_spectrum(args) -> tuple[int, str]:
    if args.lmax < 0:
        raise InvalidInput("--lmax must be non-negative")
    f = _family(args)
    top = f.max_index(args.lmax)
    if _shifted(args):
        tf = _tilde_family(args, f)
        exact = [tilde.tilde_lambda_exact(tf, l) for l in range(top + 1)]
    else:
        exact = [eigenvalue(f, l) for l in range(top + 1)]
    report = {
        "family": f.label(),
        "gamma": None if not _shifted(args) else str(_tilde_family(args, f).gamma),
        "l": list(range(top + 1)),
        "lambda": [float(e) for e in exact],
        "exact": [str(e) for e in exact],
        "truncated": top < args.lmax,
    }
    return 0, dump_json(report)


def cmd_verify(args) -> tuple[int, str]:
    opts = verify.Options(lmax=args.lmax, quick=args.quick)
    for name, value in args.tol:
        opts.tolerances[name] = value
    suite = args.suite
    skipped = []
    if args.case is not None:
        f = _family(args)
        opts.families = [f]
        if power_weight_exponent(f) is not None:
            opts.tilde_families = [_tilde_family(args, f)]
        elif suite == "tilde":
            raise NotPowerWeight(f"{f.label()} has no weight of the form sigma**k")
        else:
            opts.tilde_families = []
            skipped.append("tilde")
    report = verify.run(suite, opts)
    report["skipped"] = skipped
    return (0 if report["passed"] else 1), dump_json(report)


def dispatch(args) -> tuple[int, str]:
    if args.command == "family":
        return cmd_family_show(args)
    return {"poly": cmd_poly, "potential": cmd_potential, "spectrum": cmd_spectrum,
            "verify": cmd_verify}[args.command](args)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(normalize_argv(argv))
        code, text = dispatch(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidInput, Unsupported, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ShapeInvError as exc:  # pragma: no cover - every subclass is mapped above
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
