"""Command-line surface.

Subcommands: alpha, lct, newton, nu, bracket, certify, theta, scan, primes.
Exit codes: 0 success, 2 parse error, 3 invalid monomial set, 4 failed
precondition (integrality, reduction, inapplicable hypothesis), 5 term
budget exhausted, 6 I/O error.  Rationals print as reduced a/b, never as
decimals.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import charp, exactnum, parsing, polygeo, thresholds
from .charp import TermBudget
from .errors import (
    BudgetExceededError,
    FptError,
    IntegralityError,
    InvalidMonomialSetError,
    NotApplicableError,
    ParseError,
    ReductionError,
    SearchExhaustedError,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BAD_MONOMIALS = 3
EXIT_PRECONDITION = 4
EXIT_BUDGET = 5
EXIT_IO = 6

_fmt = exactnum.format_rational


def _point_text(point) -> str:
    return "(" + ", ".join(_fmt(x) for x in point) + ")"


def cmd_alpha(args) -> int:
    ms = parsing.parse_monomials(args.monomials, num_vars=args.vars or None)
    mp = polygeo.maximal_points(ms)
    analysis = polygeo.newton_analysis(ms)
    print(f"alpha = {_fmt(mp.threshold)}")
    print(f"unique maximal point: {'yes' if mp.unique else 'no'}")
    if mp.unique:
        print(f"maximal point: {_point_text(mp.point)}")
    members = ", ".join(
        parsing.monomial_text(ms.monomials[i], ms.num_vars)
        for i in analysis.lambda_members
    )
    print(f"diagonal position: {'yes' if analysis.diagonal_position else 'no'}")
    print(f"minimal face members ({analysis.r}): {members}")
    return EXIT_OK


def cmd_lct(args) -> int:
    ms = parsing.parse_monomials(args.monomials, num_vars=args.vars or None)
    print(f"lct = {_fmt(polygeo.newton_threshold(ms))}")
    return EXIT_OK


def cmd_newton(args) -> int:
    ms = parsing.parse_monomials(args.monomials, num_vars=args.vars or None)
    analysis = polygeo.newton_analysis(ms)
    print(f"alpha = {_fmt(analysis.threshold)}")
    print(f"diagonal position: {'yes' if analysis.diagonal_position else 'no'}")
    members = ", ".join(
        parsing.monomial_text(ms.monomials[i], ms.num_vars)
        for i in analysis.lambda_members
    )
    print(f"minimal face members ({analysis.r}): {members}")
    if args.contains:
        point = [Fraction(part.strip()) for part in args.contains.split(",")]
        inside = polygeo.newton_contains(ms, point)
        print(f"contains {_point_text(point)}: {'yes' if inside else 'no'}")
    return EXIT_OK


def _reduced_input(args) -> charp.FpPoly:
    f = parsing.parse_polynomial(args.polynomial, num_vars=args.vars or None)
    return charp.reduce_mod_p(f, args.prime, preserve_support=not args.drop_support)


def cmd_nu(args) -> int:
    fp = _reduced_input(args)
    budget = TermBudget(args.budget)
    if args.table:
        table = charp.nu_table(fp, args.e, budget)
        for e, v in enumerate(table.values, start=1):
            print(f"nu({e}) = {v}")
    else:
        print(charp.nu(fp, args.e, budget))
    return EXIT_OK


def cmd_bracket(args) -> int:
    fp = _reduced_input(args)
    report = charp.bracket(fp, args.e, TermBudget(args.budget))
    if report.nu_values is not None:
        for e, v in enumerate(report.nu_values.values, start=1):
            print(f"nu({e}) = {v}")
    if report.bracket is not None:
        lo, hi = report.bracket
        print(f"bracket: ({_fmt(lo)}, {_fmt(hi)}]")
    for note in report.notes:
        print(f"note: {note}")
    if report.budget_exhausted:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_certify(args) -> int:
    fp = _reduced_input(args)
    lam = Fraction(args.lam)
    ok = charp.certify_lower(fp, lam, args.e, TermBudget(args.budget))
    if ok:
        print(f"PROVED fpt >= {_fmt(lam)}")
    else:
        print(f"PROVED fpt < {_fmt(lam)}")
    return EXIT_OK


def cmd_theta(args) -> int:
    ms = parsing.parse_monomials(args.monomials, num_vars=args.vars or None)
    theta = thresholds.theta_polynomial(ms, args.prime, args.e)
    print(f"theta(p={args.prime}, e={args.e}) = {theta.format()}")
    names = ", ".join(
        f"t{j + 1} = coefficient of {parsing.monomial_text(ms.monomials[i], ms.num_vars)}"
        for j, i in enumerate(theta.indices)
    )
    print(names)
    return EXIT_OK


def cmd_primes(args) -> int:
    ps = exactnum.primes_in_progression(args.modulus, args.count, args.ceiling)
    print(" ".join(str(p) for p in ps))
    return EXIT_OK


def _load_config(path: str) -> dict:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError("expected key=value", lineno, 1)
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _scan_primes(args, config: dict) -> list[int]:
    spec_sources = [
        ("primes", args.primes or config.get("primes")),
        ("progression", args.progression or config.get("progression")),
        ("prime_range", args.prime_range or config.get("prime_range")),
    ]
    given = [(k, v) for k, v in spec_sources if v]
    if len(given) != 1:
        raise ValueError(
            "exactly one of --primes, --progression, --prime-range is required"
        )
    kind, value = given[0]
    if kind == "primes":
        ps = [int(p) for p in value.split(",")]
        bad = [p for p in ps if not exactnum.is_prime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        return ps
    if kind == "progression":
        d, count = (int(x) for x in value.split(","))
        return exactnum.primes_in_progression(d, count)
    lo, hi = (int(x) for x in value.split(","))
    return [p for p in range(max(lo, 2), hi + 1) if exactnum.is_prime(p)]


def cmd_scan(args) -> int:
    config = _load_config(args.config) if args.config else {}
    e_max = args.e_max if args.e_max is not None else int(config.get("e_max", 3))
    budget = args.budget if args.budget is not None else int(config.get("budget", charp.DEFAULT_TERM_BUDGET))
    jobs = args.jobs if args.jobs is not None else int(config.get("jobs", 1))
    csv_path = args.csv or config.get("csv")
    json_path = args.json or config.get("json")
    preserve = not args.drop_support
    if "preserve_support" in config and not args.drop_support:
        preserve = config["preserve_support"].lower() not in ("false", "0", "no")
    if e_max < 1:
        raise ValueError(f"e_max must be >= 1, got {e_max}")
    if budget < 10**4:
        raise ValueError(f"budget must be at least 10^4, got {budget}")
    primes = _scan_primes(args, config)

    f = parsing.parse_polynomial(args.polynomial, num_vars=args.vars or None)
    rows = thresholds.dense_fpurity_scan(
        f,
        primes,
        e_max=e_max,
        budget_limit=budget,
        preserve_support=preserve,
        jobs=jobs,
    )
    csv_text = thresholds.scan_csv_text(rows)
    config_echo = {
        "primes": sorted(set(primes)),
        "e_max": e_max,
        "budget": budget,
        "preserve_support": preserve,
        "jobs": jobs,
    }
    doc = thresholds.scan_json_document(args.polynomial, config_echo, rows)
    try:
        if csv_path:
            with open(csv_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(csv_text)
        if json_path:
            with open(json_path, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
    except OSError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_IO
    if not csv_path and not json_path:
        sys.stdout.write(csv_text)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fptkit",
        description="Exact F-pure thresholds of polynomials over finite fields "
        "and log canonical thresholds of monomial ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_vars(p):
        p.add_argument(
            "--vars",
            type=int,
            default=0,
            help="number of ambient variables (default: inferred from the input)",
        )

    p = sub.add_parser("alpha", help="threshold of a monomial ideal via the splitting polytope")
    p.add_argument("monomials")
    add_vars(p)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("lct", help="log canonical threshold via the Newton polyhedron")
    p.add_argument("monomials")
    add_vars(p)
    p.set_defaults(func=cmd_lct)

    p = sub.add_parser("newton", help="minimal face and diagonal-position analysis")
    p.add_argument("monomials")
    add_vars(p)
    p.add_argument("--contains", help="rational point 'a,b,...' to test for membership")
    p.set_defaults(func=cmd_newton)

    def add_poly_opts(p):
        p.add_argument("polynomial")
        p.add_argument("-p", "--prime", type=int, required=True)
        add_vars(p)
        p.add_argument("--budget", type=int, default=charp.DEFAULT_TERM_BUDGET)
        p.add_argument(
            "--drop-support",
            action="store_true",
            help="drop terms whose coefficients vanish mod p instead of failing",
        )

    p = sub.add_parser("nu", help="largest power of f outside the level-e Frobenius power")
    add_poly_opts(p)
    p.add_argument("-e", type=int, required=True)
    p.add_argument("--table", action="store_true", help="print all levels up to e")
    p.set_defaults(func=cmd_nu)

    p = sub.add_parser("bracket", help="two-sided threshold bracket up to a level")
    add_poly_opts(p)
    p.add_argument("-e", type=int, required=True, help="largest level to compute")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("certify", help="prove fpt >= lambda or fpt < lambda at a level")
    add_poly_opts(p)
    p.add_argument("--lambda", dest="lam", required=True, help="rational a/b in [0,1]")
    p.add_argument("-e", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("theta", help="leading coefficient polynomial on the minimal face")
    p.add_argument("monomials")
    p.add_argument("-p", "--prime", type=int, required=True)
    p.add_argument("-e", type=int, required=True)
    add_vars(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("scan", help="per-prime threshold reports with certificates")
    p.add_argument("polynomial")
    add_vars(p)
    p.add_argument("--primes", help="explicit comma-separated primes")
    p.add_argument("--progression", help="d,count: smallest count primes = 1 mod d")
    p.add_argument("--prime-range", help="lo,hi: all primes in [lo, hi]")
    p.add_argument("--e-max", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--csv", help="write CSV report here")
    p.add_argument("--json", help="write JSON report here")
    p.add_argument("--jobs", type=int, default=None, help="worker pool size")
    p.add_argument("--config", help="flat key=value config file; flags override")
    p.add_argument("--drop-support", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("primes", help="smallest primes congruent to 1 mod d")
    p.add_argument("-d", "--modulus", type=int, required=True)
    p.add_argument("-k", "--count", type=int, required=True)
    p.add_argument("--ceiling", type=int, default=exactnum.PRIME_SEARCH_CEILING)
    p.set_defaults(func=cmd_primes)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as ex:
        print(f"parse error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidMonomialSetError as ex:
        print(f"invalid monomial set: {ex}", file=sys.stderr)
        return EXIT_BAD_MONOMIALS
    except (IntegralityError, NotApplicableError, ReductionError) as ex:
        print(f"not applicable: {ex}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceededError as ex:
        print(f"budget exhausted: {ex}", file=sys.stderr)
        return EXIT_BUDGET
    except SearchExhaustedError as ex:
        print(f"search exhausted: {ex}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ValueError, FptError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as ex:
        print(f"i/o error: {ex}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
