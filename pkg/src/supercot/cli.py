"""Command-line surface: verification suites, invariance checks and exports.

Exit codes: 0 on success (or verified invariance), 1 when a verification
or invariance check fails, 2 on usage, parse or consistency errors.  All
numeric output is exact; rationals print as num/den.  Randomised suites
take an explicit --seed (default 0) and identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .clifford import build_spin_rep
from .invariants import (
    Weights,
    check_invariance,
    dirac_power,
    search_invariants,
)
from .matutil import to_json as matrix_to_json
from .parse import ParseError, sp_parse
from .superpoly import Signature, SuperPolynomial
from .verify import SUITES, run_suite

USAGE_ERROR, CHECK_FAILED, OK = 2, 1, 0


class CliError(Exception):
    """Usage-level error: reported on stderr with exit code 2."""


def _signature(args) -> Signature:
    dim = args.dim
    if args.signature:
        try:
            p, q = (int(part) for part in args.signature.split(","))
        except ValueError:
            raise CliError(f"cannot parse signature {args.signature!r}, expected p,q")
        if p + q != dim:
            raise CliError(f"signature {p},{q} does not sum to dimension {dim}")
        return Signature(p, q)
    return Signature(dim, 0)


def _fraction(text: str, label: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"cannot parse {label} {text!r} as a rational")


def _weights(args, module: str) -> Weights:
    delta = _fraction(args.delta, "--delta") if args.delta is not None else None
    lam = _fraction(args.lam, "--lambda") if args.lam is not None else None
    mu = _fraction(args.mu, "--mu") if args.mu is not None else None
    try:
        if module == "D":
            if lam is None or mu is None:
                raise CliError("module D requires --lambda and --mu")
            if delta is not None and delta != mu - lam:
                raise CliError("--delta must equal --mu minus --lambda")
            return Weights.operator(lam, mu)
        if delta is None:
            raise CliError(f"module {module} requires --delta")
        return Weights.symbol(delta)
    except ValueError as exc:
        raise CliError(str(exc))


def _read_expression(raw: str) -> str:
    if raw.startswith("@"):
        with open(raw[1:], "r", encoding="utf-8") as handle:
            return handle.read()
    return raw


def _specialize_poly(poly: SuperPolynomial, value: Fraction) -> SuperPolynomial:
    terms = {}
    for key, coeff in poly.items():
        terms[key] = coeff.specialize_h(value)
    return SuperPolynomial(poly.n, terms)


def _emit(data, args) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=False))


# -- subcommands ------------------------------------------------------------------


def cmd_verify(args) -> int:
    sig = _signature(args)
    if args.suite == "all":
        names = [name for name, (_f, needs_even) in SUITES.items() if not (needs_even and sig.n % 2)]
    else:
        if args.suite not in SUITES:
            raise CliError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
        names = [args.suite]
    try:
        results = [(name, run_suite(name, sig, args.seed)) for name in names]
    except ValueError as exc:
        raise CliError(str(exc))
    all_ok = all(row.ok for _name, rows in results for row in rows)
    if args.format == "json":
        payload = {
            "dim": sig.n,
            "signature": [sig.p, sig.q],
            "seed": args.seed,
            "suites": [
                {"suite": name, "checks": [row.to_json() for row in rows]}
                for name, rows in results
            ],
            "ok": all_ok,
        }
        print(json.dumps(payload, indent=2))
    else:
        for name, rows in results:
            for row in rows:
                status = "PASS" if row.ok else "FAIL"
                line = f"[{status}] {row.name} ({row.cases} cases)"
                if row.detail:
                    line += f" :: {row.detail}"
                print(line)
        print(f"verify: {'all checks passed' if all_ok else 'FAILURES detected'}")
    return OK if all_ok else CHECK_FAILED


def cmd_check(args) -> int:
    sig = _signature(args)
    weights = _weights(args, args.module)
    try:
        poly = sp_parse(_read_expression(args.expr), sig.n)
    except ParseError as exc:
        raise CliError(f"parse error: {exc}")
    report = check_invariance(poly, args.module, weights, sig)
    if args.format == "json":
        payload = {
            "candidate": poly.to_json(),
            "module": args.module,
            "weights": weights.to_json(),
            "residuals": [
                {"generator": name, "zero": res.is_zero(), "residual": res.to_json()}
                for name, res in report.residuals
            ],
            "invariant": report.invariant,
        }
        print(json.dumps(payload, indent=2))
    else:
        for name, res in report.residuals:
            print(f"{name}: {res}")
        print(f"verdict: {'invariant' if report.invariant else 'non-invariant'}")
    return OK if report.invariant else CHECK_FAILED


def cmd_search(args) -> int:
    sig = _signature(args)
    weights = _weights(args, args.module)
    try:
        k_str, kappa_str = args.bidegree.split(",")
        k, kappa = int(k_str), int(kappa_str)
    except ValueError:
        raise CliError(f"cannot parse bidegree {args.bidegree!r}, expected k,kappa")
    try:
        result = search_invariants(
            sig, k, kappa, args.module, weights,
            x_degree=args.x_degree, h_degree=args.h_degree,
        )
    except ValueError as exc:
        raise CliError(str(exc))
    basis = list(result.basis)
    if args.specialize_h is not None:
        value = _fraction(args.specialize_h, "--specialize-h")
        basis = [_specialize_poly(b, value) for b in basis]
    if args.format == "json":
        payload = result.to_json()
        payload["basis"] = [b.to_json() for b in basis]
        print(json.dumps(payload, indent=2))
    else:
        print(
            f"module {args.module}, signature ({sig.p},{sig.q}), bidegree ({k},{kappa}), "
            f"weights {weights.to_json()}"
        )
        print(f"invariant dimension: {result.dimension}")
        for b in basis:
            print(f"  {b}")
    return OK


def cmd_dirac_power(args) -> int:
    sig = _signature(args)
    try:
        power = dirac_power(args.s, sig)
    except ValueError as exc:
        raise CliError(str(exc))
    op = power.operator
    if args.specialize_h is not None:
        raise CliError("--specialize-h is not supported for operators; h is structural")
    if args.format == "json":
        payload = {
            "s": power.power,
            "weights": power.weights.to_json(),
            "symbol": power.symbol.to_json(),
            "operator": op.to_json(),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"weights: lambda = {power.weights.lam}, mu = {power.weights.mu}")
        print(f"symbol: {power.symbol}")
        print(f"operator (gamma normalisation): {op.render_gamma()}")
    return OK


def cmd_spin_rep(args) -> int:
    sig = _signature(args)
    try:
        rep = build_spin_rep(sig)
    except ValueError as exc:
        raise CliError(str(exc))
    mats = []
    for i in range(1, sig.n + 1):
        mat = rep.gamma_matrix(i) if args.normalization == "gamma" else rep.c_matrix(i)
        if args.specialize_h is not None:
            value = _fraction(args.specialize_h, "--specialize-h")
            mat = [[entry.specialize_h(value) for entry in row] for row in mat]
        mats.append(mat)
    if args.format == "json":
        payload = {
            "signature": [sig.p, sig.q],
            "normalization": args.normalization,
            "size": rep.size,
            "matrices": [matrix_to_json(mat) for mat in mats],
        }
        print(json.dumps(payload, indent=2))
    else:
        label = "gamma" if args.normalization == "gamma" else "c"
        for i, mat in enumerate(mats, start=1):
            print(f"{label}{i}:")
            for row in mat:
                print("  [" + ", ".join(str(entry) for entry in row) + "]")
    return OK


def cmd_parse(args) -> int:
    sig = _signature(args)
    try:
        poly = sp_parse(_read_expression(args.expr), sig.n)
    except ParseError as exc:
        raise CliError(f"parse error: {exc}")
    if args.specialize_h is not None:
        value = _fraction(args.specialize_h, "--specialize-h")
        try:
            poly = _specialize_poly(poly, value)
        except ZeroDivisionError as exc:
            raise CliError(str(exc))
    if args.format == "json":
        print(json.dumps(poly.to_json(), indent=2))
    else:
        print(poly)
    return OK


# -- argument plumbing ----------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dim", type=int, default=2, help="dimension n (default 2)")
    parser.add_argument(
        "--signature", default=None, help="metric signature p,q (default Euclidean n,0)"
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomised suites")
    parser.add_argument(
        "--specialize-h", default=None, metavar="RAT",
        help="substitute a rational value for h in emitted polynomials/matrices",
    )


def _add_weight_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--module", choices=("T", "S", "D"), required=True)
    parser.add_argument("--delta", default=None, help="symbol weight (rational)")
    parser.add_argument("--lambda", dest="lam", default=None, help="operator source weight")
    parser.add_argument("--mu", default=None, help="operator target weight")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercot",
        description="Exact symbolic calculus on the flat supercotangent chart",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}, or all")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="check conformal invariance of an expression")
    p.add_argument("expr", help="expression, or @path to read from a file")
    _add_weight_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="search invariants in a fixed bidegree")
    p.add_argument("--bidegree", required=True, help="k,kappa")
    p.add_argument("--x-degree", type=int, default=0, help="allow x-dependence up to this degree")
    p.add_argument("--h-degree", type=int, default=0, help="allow h-powers up to this degree")
    _add_weight_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("dirac-power", help="emit the conformal odd power N(Delta R^s)")
    p.add_argument("--s", type=int, default=0, help="power of the free Hamiltonian R")
    _add_common(p)
    p.set_defaults(func=cmd_dirac_power)

    p = sub.add_parser("spin-rep", help="emit the spinor representation matrices")
    p.add_argument(
        "--normalization", choices=("c", "gamma"), default="gamma",
        help="matrix normalisation: c (stars of xi) or gamma = sqrt2 c",
    )
    _add_common(p)
    p.set_defaults(func=cmd_spin_rep)

    p = sub.add_parser("parse", help="parse an expression to canonical form")
    p.add_argument("expr", help="expression, or @path to read from a file")
    _add_common(p)
    p.set_defaults(func=cmd_parse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
