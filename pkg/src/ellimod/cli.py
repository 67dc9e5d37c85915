"""Command-line interface: ``ellimod {describe,hitchin,stable-exists,cpair,selftest}``.

Exit codes: 0 success, 1 selftest failure, 2 bad input, 3 internal
consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import ConsistencyError, EllimodError
from .group import PRESET_NAMES, parse_degree, parse_group, stable_exists
from .moduli import CoefficientSpace, describe_moduli, levi_for, report_json
from .weyl import _parse_gaussian

EXIT_OK, EXIT_SELFTEST, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ellimod",
        description="Moduli of G-bundles, G-Higgs bundles and c-pairs over an elliptic curve.",
        epilog="group presets: " + ", ".join(PRESET_NAMES) + "; join factors with 'x', or pass a .json file",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--group", "-g", required=True, help="preset such as GL(4) or PGL(2)xSL(3)")
        sp.add_argument("--degree", "-d", default="0",
                        help="integer per component ('2' or '1,0') or raw 'u=1/2;c=1'")

    d = sub.add_parser("describe", help="quotient description of the moduli space")
    common(d)
    d.add_argument("--space", "-s", default="X",
                   help="X, TstarX, Cstar2, Xsharp or Cline (aliases: bundles, higgs, reps, connections)")
    d.add_argument("--format", choices=("json", "table"), default="table")

    h = sub.add_parser("hitchin", help="Hitchin base, strata and fibres (JSON report)")
    common(h)
    h.add_argument("--point", action="append", default=[], metavar="S",
                   help="comma-separated Gaussian rationals, e.g. '1+2i,-1/3'; repeatable")

    s = sub.add_parser("stable-exists", help="print yes or no")
    common(s)
    s.add_argument("--verbose", "-v", action="store_true")

    c = sub.add_parser("cpair", help="build a unitary c-pair")
    c.add_argument("--su", type=int, help="clock/shift pair in SU(n)")
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--group", "-g")
    c.add_argument("--degree", "-d", default="0")

    sub.add_parser("selftest", help="run the acceptance suite")
    return p


def _points(raw: list[str]) -> list[list[tuple]]:
    return [[_parse_gaussian(x) for x in item.split(",") if x.strip()] for item in raw]


def _table(desc, levi) -> str:
    rows = [
        ("space", f"{desc.space.value}  [{desc.space.meaning}]"),
        ("D_c", levi.d_c_name),
        ("p(c) labels", ",".join(map(str, levi.p_c_labels)) or "-"),
        ("F_c", str(levi.f_c)),
        ("lattice rank", str(desc.lattice_rank)),
        ("|W_c|", str(desc.w_c_order)),
        ("complex dim", str(desc.complex_dimension)),
        ("point", "yes" if desc.is_point else "no"),
        ("relation", "normalization" if desc.is_normalization else "isomorphism"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _run(args) -> int:
    if args.command == "selftest":
        from .acceptance import run_all
        results = run_all(print)
        return EXIT_OK if all(r.passed for r in results) else EXIT_SELFTEST

    if args.command == "cpair":
        from .cpairs import build_cpair, clock_shift, commutant_dimension
        if args.su is not None:
            pair = clock_shift(args.su, args.k)
        elif args.group:
            pair = build_cpair(levi_for(parse_group(args.group), args.degree))
        else:
            raise _Usage("cpair needs --su N or --group G")
        doc = pair.to_json()
        doc["commutator_residual"] = pair.commutator_residual()
        doc["commutant_dimension"] = commutant_dimension([pair.a, pair.b]) if pair.n else 0
        print(json.dumps(doc, indent=2))
        return EXIT_OK

    G = parse_group(args.group)
    d = parse_degree(G, args.degree)
    if args.command == "describe":
        desc = describe_moduli(G, d, CoefficientSpace.parse(args.space))
        if args.format == "json":
            print(json.dumps(desc.to_json(), indent=2))
        else:
            print(_table(desc, levi_for(G, d)))
    elif args.command == "hitchin":
        pts = _points(args.point)
        print(report_json(G, d, pts))
    elif args.command == "stable-exists":
        rep = stable_exists(G, d)
        print("yes" if rep.exists_stable else "no")
        if args.verbose:
            print(rep.witness)
    return EXIT_OK


class _Usage(Exception):
    pass


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return _run(args)
    except _Usage as exc:
        print(f"ellimod: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"ellimod: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except EllimodError as exc:
        print(f"ellimod: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
