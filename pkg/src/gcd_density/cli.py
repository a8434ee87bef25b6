"""Command-line entry point: ``gcd-density <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import gl2
from .arith import is_prime
from .conjecture import curve_conjecture, universal_constant
from .count import compute_trace
from .curve import parse_curve, reduce_mod_p
from .entangle import EntangleSpec, density_S, enumerate_density, restricted_product_size
from .errors import DensityError, MismatchedCount
from .survey import SurveyConfig, emit_csv, emit_json, run_survey

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _curve_arg(text: str):
    try:
        return parse_curve(text)
    except (ValueError, DensityError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _prime_set(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    for v in values:
        if not is_prime(v):
            raise argparse.ArgumentTypeError(f"{v} is not prime")
    return values


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gcd-density",
        description="Density of primes p with gcd(#E(F_p), p - 1) = 1 for elliptic curves over Q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    curve_help = 'Weierstrass coefficients "a1,a2,a3,a4,a6", e.g. "0,0,1,-1,0"'

    p = sub.add_parser("constant", help="truncated Euler product C = prod_l (1 - l/((l-1)^2 (l+1)))")
    p.add_argument("--limit", type=int, default=10**6,
                   help="include primes l <= LIMIT; error bound is 4/LIMIT (default 10^6)")

    p = sub.add_parser("conjecture", help="conjectured density for a Serre curve, C times the entanglement correction")
    p.add_argument("--curve", type=_curve_arg, required=True, help=curve_help)
    p.add_argument("--limit", type=int, default=10**6, help="truncation bound for C (default 10^6)")

    p = sub.add_parser("survey", help="count #E(F_p) for all good p <= LIMIT and compare with the conjecture")
    p.add_argument("--curve", type=_curve_arg, required=True, help=curve_help)
    p.add_argument("--limit", type=int, required=True, help="survey bound X (>= 100)")
    p.add_argument("--csv", help="write per-prime records p,ap,cardinality,gcd_ok,re_member,anomalous,method")
    p.add_argument("--json", help="write the aggregate report with exact fractions as {num, den}")
    p.add_argument("--seed", type=int, default=0, help="seed for point sampling in BSGS (default 0)")
    p.add_argument("--threads", type=_positive, default=1, help="worker processes; output is identical for any value")

    p = sub.add_parser("verify-gl2", help="check the GL_2(F_l) counts behind the local density by brute force")
    p.add_argument("--ell", type=int, required=True,
                   help="prime l <= 13: group order, l^2 special matrices, centralizer and class of [[1,1],[0,1]], "
                        "sum of chi(det) = -l^2 (odd l), sum of sgn = 2 (l = 2)")

    p = sub.add_parser("verify-entangle", help="closed-form density for a prime set S against exhaustive counting")
    p.add_argument("--disc", type=int, required=True, help="fundamental discriminant D of Q(sqrt(Delta)), 0 or 1 mod 4")
    p.add_argument("--set", type=_prime_set, required=True, dest="primes", help='prime set S, e.g. "2,3"')
    p.add_argument("--threads", type=_positive, default=1, help="worker processes for the Cartesian count")

    p = sub.add_parser("ap", help="trace of Frobenius a_p and #E(F_p) = p + 1 - a_p at one prime")
    p.add_argument("--curve", type=_curve_arg, required=True, help=curve_help)
    p.add_argument("--prime", type=int, required=True, help="prime p of good reduction")
    p.add_argument("--seed", type=int, default=0, help="seed for point sampling in BSGS (default 0)")
    return parser


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def cmd_constant(args) -> int:
    if args.limit < 100:
        print("error: --limit must be at least 100", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(universal_constant(args.limit).to_json(), indent=2))
    return EXIT_OK


def cmd_conjecture(args) -> int:
    if args.limit < 100:
        print("error: --limit must be at least 100", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(curve_conjecture(args.curve, args.limit).to_json(), indent=2))
    return EXIT_OK


def cmd_survey(args) -> int:
    if args.limit < 100:
        print("error: --limit must be at least 100", file=sys.stderr)
        return EXIT_USAGE
    report = run_survey(args.curve, args.limit, SurveyConfig(seed=args.seed, threads=args.threads))
    try:
        if args.csv:
            emit_csv(report, args.csv)
        if args.json:
            emit_json(report, args.json)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    conj = report.conjecture
    print(f"curve {report.curve.label}  X={report.limit}")
    print(f"primes {report.total_primes}  good {report.good_primes}  gcd_ok {report.gcd_ok}  "
          f"re_member {report.re_member}  anomalous {report.anomalous}")
    print(f"empirical density {float(report.empirical_density):.6f}  conjectured {conj.value:.6f}  "
          f"(D={conj.fundamental_discriminant}, correction {_fmt(conj.correction)})")
    print(f"{'ell':>4} {'observed':>10} {'predicted':>10} {'z':>7}  status")
    for row in report.event_table:
        print(f"{row.ell:>4} {float(row.observed):>10.6f} {float(row.predicted):>10.6f} "
              f"{row.z:>7.2f}  {row.status}")
    return EXIT_FAIL if report.hard_failure else EXIT_OK


def cmd_verify_gl2(args) -> int:
    ell = args.ell
    if not is_prime(ell) or ell > gl2.MAX_ELL:
        print(f"error: --ell must be a prime <= {gl2.MAX_ELL}", file=sys.stderr)
        return EXIT_USAGE
    rows = [("group order", gl2.group_order(ell), len(gl2.enumerate_gl2(ell)))]
    try:
        for name, fn in (("special count", gl2.count_special),
                         ("centralizer of T", gl2.centralizer_order_T),
                         ("class size of T", gl2.class_size_T)):
            c = fn(ell)
            rows.append((name, c.closed, c.brute))
    except MismatchedCount as exc:
        print(f"FAIL: {exc}")
        return EXIT_FAIL
    if ell == 2:
        rows.append(("sgn sum", 2, gl2.sgn_sum_2()))
    else:
        rows.append(("chi(det) sum", -ell * ell, gl2.chi_det_sum(ell)))
    ok = all(closed == brute for _, closed, brute in rows)
    print(f"{'quantity':<18} {'closed form':>12} {'brute force':>12}  status")
    for name, closed, brute in rows:
        print(f"{name:<18} {closed:>12} {brute:>12}  {'PASS' if closed == brute else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_entangle(args) -> int:
    try:
        spec = EntangleSpec(args.primes, args.disc)
        closed = density_S(spec)
        oracle = enumerate_density(spec, "both", workers=args.threads)
        members = restricted_product_size(spec)
    except MismatchedCount as exc:
        print(f"FAIL: {exc}")
        return EXIT_FAIL
    except (ValueError, DensityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    total = 1
    for ell in spec.S:
        total *= gl2.group_order(ell)
    ok = closed == oracle
    print(f"S={','.join(map(str, spec.S))} D={spec.D} entangled={spec.restricted} "
          f"tuples={members}/{total}")
    print(f"{_fmt(closed)} = {_fmt(oracle)} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ap(args) -> int:
    p = args.prime
    if not is_prime(p):
        print(f"error: {p} is not prime", file=sys.stderr)
        return EXIT_USAGE
    try:
        E = reduce_mod_p(args.curve, p)
    except DensityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    tr = compute_trace(E, seed=f"{args.seed}:{args.curve.label}:{p}")
    print(f"p={tr.p} ap={tr.ap} cardinality={tr.cardinality} method={tr.method}")
    return EXIT_OK


COMMANDS = {
    "constant": cmd_constant,
    "conjecture": cmd_conjecture,
    "survey": cmd_survey,
    "verify-gl2": cmd_verify_gl2,
    "verify-entangle": cmd_verify_entangle,
    "ap": cmd_ap,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
