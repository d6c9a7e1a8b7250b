"""Command-line front end: one subcommand per operation family.

Exit codes: 0 success with no violations, 1 violations found (a theorem scan
reporting a counterexample is a bug escalation), 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds, chains, construct, cubic, ell2, scans
from .config import load_bounds
from .quadratic import BoundExceededError
from .reports import ScanReport, render


def _common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", dest="mode", action="store_const", const="json", default="json")
    sub.add_argument("--table", dest="mode", action="store_const", const="table")
    sub.add_argument("--tsv", dest="mode", action="store_const", const="tsv")
    sub.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    sub.add_argument("--fail-fast", action="store_true", help="abort on the first violation")
    sub.add_argument("--seed", type=int, default=None,
                     help="seed for randomized test harnesses; core operations are deterministic")
    sub.add_argument("--config", default=None, help="JSON file overriding module search bounds")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="scholz", description=__doc__)
    subs = ap.add_subparsers(dest="cmd", required=True)

    s = subs.add_parser("reciprocity", help="quadratic unit reciprocity law checks")
    s.add_argument("p", type=int, nargs="?")
    s.add_argument("q", type=int, nargs="?")
    s.add_argument("--max", type=int, default=None)
    _common(s)

    s = subs.add_parser("pell", help="negative-Pell table classification vs ground truth")
    s.add_argument("p", type=int, nargs="?")
    s.add_argument("q", type=int, nargs="?")
    s.add_argument("--max", type=int, default=None)
    _common(s)

    s = subs.add_parser("reflect", help="3-rank reflection inequality")
    s.add_argument("m", type=int, nargs="?")
    s.add_argument("--range", dest="mrange", default=None, help="scan range a..b over |m|")
    _common(s)

    s = subs.add_parser("knot", help="unit/number knot reports for Q(sqrt p, sqrt q)")
    s.add_argument("p", type=int, nargs="?")
    s.add_argument("q", type=int, nargs="?")
    s.add_argument("--max", type=int, default=None)
    _common(s)

    s = subs.add_parser("rayclass", help="ray class number modulo a split degree-1 prime")
    s.add_argument("d", type=int)
    s.add_argument("p", type=int)
    s.add_argument("--second-ideal", action="store_true")
    _common(s)

    s = subs.add_parser("primary2", help="2-primary test for split primes of an imaginary field")
    s.add_argument("d", type=int)
    s.add_argument("p", type=int, nargs="?")
    s.add_argument("--max", type=int, default=None)
    _common(s)

    s = subs.add_parser("cubicsym", help="symbolic power-residue class of the cubic unit")
    s.add_argument("q", type=int)
    s.add_argument("p", type=int)
    s.add_argument("--oracle", action="store_true", help="also run the brute-force congruence oracle")
    _common(s)

    s = subs.add_parser("recip3", help="degree-3 reciprocity biconditional")
    s.add_argument("p", type=int, nargs="?")
    s.add_argument("q", type=int, nargs="?")
    s.add_argument("--max", type=int, default=None)
    _common(s)

    s = subs.add_parser("plan-d4", help="dihedral-order-8 construction certificate")
    s.add_argument("p", type=int)
    _common(s)

    s = subs.add_parser("plan-pq", help="non-abelian order-pq construction certificate")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    _common(s)

    s = subs.add_parser("cubic-from-unit", help="unramified cubic from a fundamental unit")
    s.add_argument("m", type=int)
    _common(s)

    s = subs.add_parser("addchain", help="optimal addition chain")
    s.add_argument("n", type=int, nargs="?")
    s.add_argument("--max", type=int, default=None)
    s.add_argument("--verify", action="store_true")
    _common(s)

    s = subs.add_parser("scholz-brauer", help="l(2^n - 1) <= n - 1 + l(n) check")
    s.add_argument("n", type=int)
    _common(s)

    s = subs.add_parser("rd", help="root discriminants: cyclotomic family or geometry bound")
    s.add_argument("p", type=int, nargs="?", help="odd prime: cyclotomic root discriminant")
    s.add_argument("--minkowski", nargs=2, type=int, metavar=("N", "R2"))
    _common(s)

    s = subs.add_parser("mindisc", help="minimal discriminant scan (degree 2 or 3)")
    s.add_argument("degree", type=int, choices=(2, 3))
    _common(s)

    s = subs.add_parser("perron", help="disc(x^n - 2) family and the 2n bound")
    s.add_argument("--max-n", type=int, default=12)
    s.add_argument("--wieferich", type=int, default=2000)
    _common(s)

    s = subs.add_parser("wieferich", help="primes p with 2^(p-1) = 1 mod p^2")
    s.add_argument("--max", type=int, default=2000)
    _common(s)

    s = subs.add_parser("count-v4", help="count Klein-four fields by discriminant")
    s.add_argument("bound", type=int)
    _common(s)

    return ap


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError as e:
        raise SystemExit(f"malformed range {text!r}: expected a..b") from e


def _emit_scan(args, records, report) -> int:
    if args.fail_fast and report.violations:
        records = records[: next(i for i, r in enumerate(records) if r in report.violations) + 1]
    print(render(records, report, args.mode))
    return 1 if report.violations else 0


def _emit_single(args, record: dict, command: str) -> int:
    report = ScanReport(command, {}, 1, [], 0)
    print(render([record], report, args.mode))
    return 0


def run(argv: list[str]) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    load_bounds(args.config if hasattr(args, "config") else None)
    cmd = args.cmd

    try:
        if cmd == "reciprocity":
            if args.max is not None:
                return _emit_scan(args, *scans.reciprocity_scan(args.max, args.jobs))
            if args.p is None or args.q is None:
                raise SystemExit("reciprocity needs p q or --max")
            r = ell2.scholz_reciprocity_check(args.p, args.q)
            rec = {"p": r.p, "q": r.q, "lhs": int(r.lhs), "rhs": int(r.rhs),
                   "lhs_swapped": int(r.lhs_swapped), "equal": r.equal}
            print(render([rec], None, args.mode))
            return 0 if r.equal else 1

        if cmd == "pell":
            if args.max is not None:
                return _emit_scan(args, *scans.pell_scan(args.max, args.jobs))
            if args.p is None or args.q is None:
                raise SystemExit("pell needs p q or --max")
            rec = scans._pell_worker((args.p, args.q))
            rec.pop("key")
            print(render([rec], None, args.mode))
            return 0 if rec["match"] else 1

        if cmd == "reflect":
            if args.mrange is not None:
                lo, hi = _parse_range(args.mrange)
                return _emit_scan(args, *scans.reflection_scan(lo, hi, args.jobs))
            if args.m is None:
                raise SystemExit("reflect needs m or --range a..b")
            rec = scans._reflection_worker(args.m)
            rec.pop("key")
            print(render([rec], None, args.mode))
            return 0 if rec["ok"] else 1

        if cmd == "knot":
            if args.max is not None:
                return _emit_scan(args, *scans.knot_scan(args.max, args.jobs))
            if args.p is None or args.q is None:
                raise SystemExit("knot needs p q or --max")
            rec = scans._knot_worker((args.p, args.q))
            rec.pop("key")
            return _emit_single(args, rec, "knot")

        if cmd == "rayclass":
            which = "second" if args.second_ideal else "first"
            value = ell2.ray_class_number(args.d, args.p, which)
            return _emit_single(args, {"d": args.d, "p": args.p, "which": which, "ray_class_number": value}, "rayclass")

        if cmd == "primary2":
            if args.max is not None:
                return _emit_scan(args, *scans.primary2_scan(args.d, args.max, args.jobs))
            if args.p is None:
                raise SystemExit("primary2 needs p or --max")
            rec = scans._primary2_worker((args.d, args.p))
            rec.pop("key")
            return _emit_single(args, rec, "primary2")

        if cmd == "cubicsym":
            F = cubic.period_field(args.q)
            system = cubic.unit_search(F)
            cls = cubic.symbolic_class(F, system.generator, args.p)
            rec = {
                "q": args.q, "p": args.p,
                "generator": cubic.elt_str(system.generator),
                "characters": list(cls.characters),
                "level": cls.level, "squared": cls.squared,
                "saturated_at_3": system.saturated_at_3,
            }
            if args.oracle:
                rec["oracle_level"] = cubic.symbolic_level_bruteforce(F, system.generator, args.p)
                rec["oracle_agrees"] = rec["oracle_level"] == cls.level
            return _emit_single(args, rec, "cubicsym")

        if cmd == "recip3":
            if args.max is not None:
                return _emit_scan(args, *scans.recip3_scan(args.max, args.jobs))
            if args.p is None or args.q is None:
                raise SystemExit("recip3 needs p q or --max")
            r = cubic.l3_reciprocity_check(args.p, args.q)
            rec = {"p": r.p, "q": r.q, "level_pq": r.class_pq.level,
                   "level_qp": r.class_qp.level, "holds": r.biconditional_holds}
            print(render([rec], None, args.mode))
            return 0 if r.biconditional_holds else 1

        if cmd == "plan-d4":
            cert = construct.d4_plan(args.p)
            print(cert.to_json() if args.mode == "json" else render([json.loads(cert.to_json())], None, args.mode))
            return 0 if cert.complete else 1

        if cmd == "plan-pq":
            cert = construct.pq_plan(args.p, args.q)
            print(cert.to_json() if args.mode == "json" else render([json.loads(cert.to_json())], None, args.mode))
            return 0 if cert.complete else 1

        if cmd == "cubic-from-unit":
            r = construct.cubic_from_unit(args.m)
            rec = {
                "m": r.m, "applicable": r.applicable, "reason": r.reason,
                "T": r.unit_T, "U": r.unit_U,
                "poly": None if r.poly is None else f"x^3 - 3x - {2*r.unit_T}",
                "disc": r.disc,
                "disc_factorization": None if r.disc_factorization is None else str(list(r.disc_factorization)),
                "partner_discriminant": r.partner_discriminant,
                "ratio_square_root": r.ratio_square_root,
                "irreducible": r.irreducible,
                "degenerate": r.degenerate,
                "unramified_claim": r.unramified_claim,
            }
            return _emit_single(args, rec, "cubic-from-unit")

        if cmd == "addchain":
            if args.max is not None:
                return _emit_scan(args, *scans.addchain_scan(args.max, args.jobs))
            if args.n is None:
                raise SystemExit("addchain needs n or --max")
            chain, length = chains.optimal_chain(args.n)
            rec = {"n": args.n, "length": length, "chain": list(chain.terms)}
            if args.verify:
                rec["valid"] = chain.is_valid()
            return _emit_single(args, rec, "addchain")

        if cmd == "scholz-brauer":
            r = chains.scholz_brauer_check(args.n)
            rec = {"n": r.n, "l_n": r.l_n, "l_mersenne": r.l_mersenne,
                   "bound": r.bound, "holds": r.holds}
            print(render([rec], None, args.mode))
            return 0 if r.holds else 1

        if cmd == "rd":
            if args.minkowski is not None:
                n, r2 = args.minkowski
                value = bounds.minkowski_rd_bound(n, r2)
                return _emit_single(args, {"degree": n, "r2": r2, "rd_lower_bound": value}, "rd")
            if args.p is None:
                raise SystemExit("rd needs a prime p or --minkowski N R2")
            rec_ = bounds.cyclotomic_rd(args.p)
            return _emit_single(args, {
                "p": args.p, "degree": rec_.degree, "disc": rec_.disc,
                "rd": rec_.rd, "precision_digits": rec_.precision_digits,
                "family": rec_.family_tag,
            }, "rd")

        if cmd == "mindisc":
            r = bounds.minimal_disc_scan(args.degree)
            rec = {"degree": r.degree, "min_abs_disc": r.min_abs_disc, "witness": r.witness}
            if args.degree == 2:
                rec["min_real"] = r.min_real
                rec["min_real_excluding_first"] = r.min_real_excluding_first
            return _emit_single(args, rec, "mindisc")

        if cmd == "perron":
            rep = bounds.perron_scan(args.max_n, args.wieferich)
            records = [
                {"n": r.degree, "disc": r.disc, "rd": r.rd, "rd_below_2n": r.rd < 2 * r.degree}
                for r in rep.records
            ]
            records.append({"wieferich_bound": rep.wieferich_bound,
                            "wieferich_primes": list(rep.wieferich_primes)})
            print(render(records, None, args.mode))
            return 0 if rep.bound_holds_all else 1

        if cmd == "wieferich":
            rep = bounds.perron_scan(2, args.max)
            return _emit_single(args, {"bound": args.max, "primes": list(rep.wieferich_primes)}, "wieferich")

        if cmd == "count-v4":
            rep = bounds.v4_count(args.bound)
            return _emit_single(args, {
                "bound": rep.bound, "count": rep.count,
                "grid": list(rep.grid), "grid_counts": list(rep.grid_counts),
                "slope_estimate": rep.slope_estimate,
            }, "count-v4")

    except (ell2.PreconditionError, cubic.SplittingError, construct.PreconditionError,
            BoundExceededError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    raise SystemExit(f"unhandled subcommand {cmd}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
