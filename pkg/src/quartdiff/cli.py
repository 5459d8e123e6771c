"""Command line interface.

Subcommands:
    solve N        decide one value, optionally emitting a certificate
    range LO HI    run a range and summarize
    verify FILE    re-check an emitted certificate
    table-check    compare a range run against the bundled table of known
                   representations

Exit codes: 0 = decided / verified, 2 = undecided values present,
1 = verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificates import VerificationError, canonical_json, verify_certificate
from .data import known_representations
from .pipeline import Config, run_range, solve
from .witness import Witness, verify_witness


def _config_from_args(args) -> Config:
    return Config(
        height=args.height,
        local_prime_cap=args.local_prime_cap,
        padic_depth=args.padic_depth,
        sieve_prime_cap=args.sieve_prime_cap,
        generator_file=getattr(args, "generators", None),
    )


def _add_config_flags(sub):
    sub.add_argument("--height", type=int, default=250, help="witness search bound")
    sub.add_argument("--local-prime-cap", type=int, default=13)
    sub.add_argument("--padic-depth", type=int, default=None)
    sub.add_argument("--sieve-prime-cap", type=int, default=229)
    sub.add_argument("--generators", type=str, default=None, help="generator file")


def cmd_solve(args) -> int:
    out = solve(args.n, _config_from_args(args))
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(out.certificate))
        print(f"certificate written to {args.emit}")
    if out.status == "representable":
        w = out.witness
        print(f"{args.n} = ({w.x}/{w.z})^4 - ({w.y}/{w.z})^4")
        return 0
    if out.status == "not-representable":
        mechanisms = [
            f"({t['a']},{t['b']},{t['c']}): {t['step']['kind']}"
            for t in out.certificate.get("triples", [])
        ]
        if out.certificate.get("easy_rank0"):
            e = out.certificate["easy_rank0"]
            print(f"{args.n}: not representable (easy curve A={e['A']} has rank 0)")
        else:
            print(f"{args.n}: not representable; " + "; ".join(mechanisms))
        return 0
    print(f"{args.n}: undecided")
    for t in out.certificate.get("triples", []):
        if t["step"] is None:
            print(f"  unresolved triple ({t['a']},{t['b']},{t['c']})")
    return 2


def cmd_range(args) -> int:
    config = _config_from_args(args)
    summary, _ = run_range(
        args.lo, args.hi, config, include_fourth_powers=args.include_fourth_powers,
        progress=(lambda n, out: print(f"{n}: {out.status}", flush=True))
        if args.verbose
        else None,
    )
    payload = summary.as_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, indent=2, sort_keys=True))
        print(f"summary written to {args.out}")
    print(f"representable:     {summary.representable}")
    print(f"undecided:         {summary.undecided}")
    print(f"mechanism counts:  {summary.mechanisms}")
    return 2 if summary.undecided else 0


def cmd_verify(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        cert = json.load(fh)
    try:
        verify_certificate(cert)
    except VerificationError as exc:
        print(f"FAIL: {exc}")
        return 1
    conditional = [
        f"({t['a']},{t['b']},{t['c']})"
        for t in cert.get("triples", [])
        if t.get("step") and t["step"].get("conditional")
    ]
    print(f"OK: certificate for n={cert['n']} verifies ({cert['outcome']})")
    if conditional:
        print(
            "note: sieve steps for triples "
            + ", ".join(conditional)
            + " are conditional on generator completeness"
        )
    return 0 if cert["outcome"] != "undecided" else 2


def cmd_table_check(args) -> int:
    """Re-derive witnesses for the bundled table and cross-check a range."""
    table = known_representations()
    bad = []
    for n, (x, y, z) in sorted(table.items()):
        if args.limit and n > args.limit:
            break
        if not verify_witness(n, Witness(x, y, z)):
            bad.append(n)
    if bad:
        print(f"FAIL: table rows do not verify: {bad}")
        return 1
    checked = [n for n in sorted(table) if not args.limit or n <= args.limit]
    print(f"table: all {len(checked)} bundled representations verify exactly")
    if args.solve_range:
        lo, hi = args.solve_range
        config = Config()
        summary, _ = run_range(lo, hi, config)
        expected = {n for n in table if lo <= n <= hi}
        got = set(summary.representable)
        if got - expected:
            print(f"FAIL: solver claims representable outside the table: {sorted(got - expected)}")
            return 1
        missed = expected - got
        if missed:
            print(f"FAIL: solver missed table entries: {sorted(missed)}")
            return 1
        print(f"range [{lo}, {hi}]: representable set matches the table exactly")
        if summary.undecided:
            print(f"undecided: {summary.undecided}")
            return 2
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="quartdiff",
        description="decide n = x^4 - y^4 over the nonzero rationals, with certificates",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_solve = subs.add_parser("solve", help="decide a single n")
    p_solve.add_argument("n", type=int)
    _add_config_flags(p_solve)
    p_solve.add_argument("--emit", type=str, default=None, help="write certificate JSON")
    p_solve.set_defaults(func=cmd_solve)

    p_range = subs.add_parser("range", help="decide a range of n")
    p_range.add_argument("lo", type=int)
    p_range.add_argument("hi", type=int)
    _add_config_flags(p_range)
    p_range.add_argument("--out", type=str, default=None, help="write summary JSON")
    p_range.add_argument("--include-fourth-powers", action="store_true")
    p_range.add_argument("--verbose", action="store_true")
    p_range.set_defaults(func=cmd_range)

    p_verify = subs.add_parser("verify", help="verify a certificate file")
    p_verify.add_argument("file", type=str)
    p_verify.set_defaults(func=cmd_verify)

    p_table = subs.add_parser(
        "table-check", help="check the bundled representation table"
    )
    p_table.add_argument("--limit", type=int, default=None)
    p_table.add_argument(
        "--solve-range",
        type=int,
        nargs=2,
        metavar=("LO", "HI"),
        default=None,
        help="also run the solver over a range and compare",
    )
    p_table.set_defaults(func=cmd_table_check)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
