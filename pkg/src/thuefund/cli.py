"""Command-line front end.

    thuefund poly M N R [--d D]
    thuefund measure {cor1,cor2,thm1,thm2,transform} ...
    thuefund verify {divisibility,recurrence,bounds,mu,table,sequence,bruteforce} ...

Exit codes: 0 success (or every check passed), 1 invalid input or a failed
check, 2 a measure that is not applicable (E <= 1), 64 a usage error.

Quadratic elements are written ``a`` or ``a:b`` for a + b*sqrt(t), with a, b
integers or fractions and t given by ``--t``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import mpmath

from . import suites
from .bounds import DenominatorCertificate
from .errors import NotApplicable, ThueFundError
from .exact import QQ, Field, QuadraticElement, qe
from .hypergeom import big_D, big_N, xpoly, xpoly_shifted
from .measures import (
    MeasureResult,
    Surd,
    corollary1,
    corollary2,
    theorem1,
    theorem2,
    complex_text,
    transform_measure,
)
from .numeric import DEFAULT_PREC, directed_float, working_precision
from .thue import ThueSetup

EXIT_OK, EXIT_FAIL, EXIT_NOT_APPLICABLE, EXIT_USAGE = 0, 1, 2, 64


@dataclass(frozen=True)
class CliConfig:
    precision_bits: int = DEFAULT_PREC
    output: str = "json"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_element(text: str, field: Field = QQ) -> QuadraticElement:
    """``a`` or ``a:b`` (a + b sqrt(t)) with rational a, b."""
    parts = text.split(":")
    if len(parts) == 1:
        return qe(Fraction(parts[0]), field)
    if len(parts) == 2:
        if field.t is None:
            raise argparse.ArgumentTypeError(f"{text!r} has an irrational part but no --t was given")
        return field.element(Fraction(parts[0]), Fraction(parts[1]))
    raise argparse.ArgumentTypeError(f"cannot parse quadratic element {text!r}")


_ROOT = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)\s*\^\s*\(\s*1\s*/\s*(\d+)\s*\)\s*$")


def parse_theta(text: str) -> mpmath.mpc:
    """A decimal or complex literal, or ``R^(1/N)`` for the principal root of a rational."""
    m = _ROOT.match(text)
    if m:
        R = Fraction(m.group(1))
        return mpmath.root(mpmath.mpf(R.numerator) / R.denominator, int(m.group(2)))
    return mpmath.mpmathify(text.replace(" ", ""))


def _cert_arg(text: str):
    if text in ("table1", "table1-d2", "nmu", "nlogn"):
        return text
    return DenominatorCertificate.from_line(text)


def _emit(cfg: CliConfig, obj: dict, text: str | None = None) -> None:
    if cfg.output == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text if text is not None else " ".join(f"{k}={v}" for k, v in sorted(obj.items())))


# ---------------------------------------------------------------------------
# poly


def cmd_poly(args, cfg: CliConfig) -> int:
    poly = xpoly(args.m, args.n, args.r)
    out = {"m": args.m, "n": args.n, "r": args.r, "coefficients": [str(c) for c in poly.coefficients],
           "D": big_D(args.m, args.n, args.r)}
    if args.d is not None:
        shifted = xpoly_shifted(args.m, args.n, args.r, args.d)
        out["d"] = args.d
        out["shifted"] = [str(c) for c in shifted.rational_coefficients()]
        out["N"] = big_N(args.m, args.n, args.r, args.d)
    lines = [f"X_{{{args.m},{args.n},{args.r}}} coefficients: [{', '.join(out['coefficients'])}]", f"D = {out['D']}"]
    if args.d is not None:
        lines += [f"X(1 - {args.d}x) coefficients: [{', '.join(out['shifted'])}]", f"N = {out['N']}"]
    _emit(cfg, out, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# measure


def _field(t: int | None) -> Field:
    return QQ if t is None else Field(t)


def _measure(args, cfg: CliConfig) -> MeasureResult | dict:
    prec = cfg.precision_bits
    if args.pipeline == "cor1":
        F = _field(args.t)
        return corollary1(parse_element(args.a, F), parse_element(args.b, F), args.n, args.cert, prec)
    if args.pipeline == "cor2":
        F = Field(args.t)
        return corollary2(args.n, args.t, args.x, parse_element(args.beta1, F), parse_element(args.gamma1, F),
                          args.cert, prec)
    if args.pipeline in ("thm1", "thm2"):
        F, K = _field(args.t), _field(args.base_t)
        setup = ThueSetup(*(parse_element(getattr(args, k), F) for k in ("beta1", "beta2", "gamma1", "gamma2")),
                          args.n, parse_element(args.x, K), base=K)
        g = Surd(parse_element(args.g, F), args.g_sqrt)
        h_rule = None
        if args.h_even is not None or args.h_odd is not None:
            h_rule = (Surd(parse_element(args.h_even or "1", K)),
                      Surd(parse_element(args.h_odd or "1", K), args.g_sqrt))
        fn = theorem1 if args.pipeline == "thm1" else theorem2
        return fn(setup, g, h=args.h, cert=args.cert, h_rule=h_rule, prec=prec)
    # transform
    F = _field(args.t)
    with working_precision(prec + 64):
        theta = parse_theta(args.theta)
        C = mpmath.mpf(args.C)
        kappa = mpmath.mpf(args.kappa)
    a = [parse_element(getattr(args, f"a{i}"), F) for i in range(1, 5)]
    C2, kappa2, theta2 = transform_measure(C, kappa, theta, *a, prec=prec)
    return {"pipeline": "Transform", "C": directed_float(C2, "d"), "kappa": directed_float(kappa2, "u"),
            "c": directed_float(1 / C2, "u"), "theta": complex_text(theta2),
            "inputs": {"C": args.C, "kappa": args.kappa, "theta": args.theta,
                       **{f"a{i}": str(a[i - 1]) for i in range(1, 5)}},
            "precision_bits": prec}


def cmd_measure(args, cfg: CliConfig) -> int:
    try:
        res = _measure(args, cfg)
    except NotApplicable as exc:
        if exc.result is not None:
            _emit(cfg, exc.result.to_dict(), exc.result.summary())
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    if isinstance(res, dict):
        _emit(cfg, res, f"C' = {res['C']}, kappa = {res['kappa']}, theta' = {res['theta']}")
    else:
        _emit(cfg, res.to_dict(), res.summary())
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _run_suite(args, cfg: CliConfig) -> Iterable[dict]:
    s = args.suite
    if s == "divisibility":
        return suites.divisibility(args.rmax if args.rmax is not None else 6)
    if s == "recurrence":
        return suites.recurrence(args.rmax if args.rmax is not None else 10, args.setups, args.seed)
    if s == "bounds":
        return suites.bounds(args.instances, args.nmax or 8, args.rmax if args.rmax is not None else 20,
                             args.seed, cfg.precision_bits)
    if s == "mu":
        return suites.mu(args.nmax or 100_000)
    if s == "table":
        return suites.table(args.n, args.rmax if args.rmax is not None else 400, args.which, args.m, args.workers)
    F = _field(args.t)
    a, b = parse_element(args.a, F), parse_element(args.b, F)
    if s == "sequence":
        return suites.sequence(a, b, args.n, args.rmax if args.rmax is not None else 30, args.cert,
                               prec=cfg.precision_bits)
    return suites.bruteforce(a, b, args.n, args.qmax, args.cert, cfg.precision_bits)


def cmd_verify(args, cfg: CliConfig) -> int:
    ok = True
    for rec in _run_suite(args, cfg):
        ok = ok and bool(rec["passed"])
        _emit(cfg, rec, f"{'PASS' if rec['passed'] else 'FAIL'} {rec['suite']}: {rec['check']}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=DEFAULT_PREC, help="working precision in bits (>= 64)")
    common.add_argument("--output", choices=("json", "text"), default="json")

    p = _Parser(prog="thuefund", description="Effective irrationality measures from hypergeometric approximations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pp = sub.add_parser("poly", parents=[common], help="coefficients of X_{m,n,r} with D and N")
    pp.add_argument("m", type=int)
    pp.add_argument("n", type=int)
    pp.add_argument("r", type=int)
    pp.add_argument("--d", type=int)
    pp.set_defaults(func=cmd_poly)

    pm = sub.add_parser("measure", help="compute an irrationality measure")
    msub = pm.add_subparsers(dest="pipeline", required=True, parser_class=_Parser)
    cert = dict(type=_cert_arg, default="table1",
                help="table1, table1-d2, nmu, nlogn, or a certificate line")

    c1 = msub.add_parser("cor1", parents=[common], help="(a/b)^(1/n)")
    c1.add_argument("--a", required=True)
    c1.add_argument("--b", required=True)
    c1.add_argument("--n", type=int, required=True)
    c1.add_argument("--t", type=int, help="K = Q(sqrt t) for imaginary quadratic a, b")
    c1.add_argument("--cert", **cert)

    c2 = msub.add_parser("cor2", parents=[common], help="beta1 = a + b sqrt(t), K = Q")
    c2.add_argument("--n", type=int, required=True)
    c2.add_argument("--t", type=int, required=True)
    c2.add_argument("--x", type=int, required=True)
    c2.add_argument("--beta1", required=True)
    c2.add_argument("--gamma1", required=True)
    c2.add_argument("--cert", **cert)

    for name in ("thm1", "thm2"):
        th = msub.add_parser(name, parents=[common], help="general form at a point x")
        for k in ("beta1", "beta2", "gamma1", "gamma2", "x"):
            th.add_argument(f"--{k}", required=True)
        th.add_argument("--n", type=int, required=True)
        th.add_argument("--t", type=int, help="field holding the parameters")
        th.add_argument("--base-t", type=int, help="K = Q(sqrt base_t); omit for K = Q")
        th.add_argument("--g", required=True, help="rational part of g")
        th.add_argument("--g-sqrt", type=int, default=1, help="squarefree k with g = (rational part)*sqrt(k)")
        th.add_argument("--h-even")
        th.add_argument("--h-odd")
        th.add_argument("--h", type=float)
        th.add_argument("--cert", **cert)

    tr = msub.add_parser("transform", parents=[common], help="carry a measure through a Moebius map")
    tr.add_argument("--C", required=True)
    tr.add_argument("--kappa", required=True)
    tr.add_argument("--theta", required=True, help="decimal, complex literal or R^(1/N)")
    tr.add_argument("--t", type=int)
    for i, default in ((1, "1"), (2, "0"), (3, "0"), (4, "1")):
        tr.add_argument(f"--a{i}", default=default)
    pm.set_defaults(func=cmd_measure)

    pv = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    pv.add_argument("suite", choices=suites.SUITES)
    pv.add_argument("--rmax", type=int)
    pv.add_argument("--nmax", type=int)
    pv.add_argument("--n", type=int, default=3)
    pv.add_argument("--m", type=int, default=1)
    pv.add_argument("--which", choices=("table1", "table1-d2"), default="table1")
    pv.add_argument("--workers", type=int, default=1)
    pv.add_argument("--setups", type=int, default=5)
    pv.add_argument("--instances", type=int, default=100)
    pv.add_argument("--seed", type=int, default=1)
    pv.add_argument("--a", default="128")
    pv.add_argument("--b", default="125")
    pv.add_argument("--t", type=int)
    pv.add_argument("--qmax", type=int, default=1000)
    pv.add_argument("--cert", **cert)
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 64:
        parser.error("--precision must be at least 64")
    if getattr(args, "rmax", None) is not None and args.rmax < 0:
        parser.error("--rmax must be nonnegative")
    cfg = CliConfig(args.precision, args.output)
    try:
        return args.func(args, cfg)
    except NotApplicable as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except (ThueFundError, ValueError, ZeroDivisionError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
