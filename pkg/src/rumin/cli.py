"""Command-line entry point.

Exit codes: 0 success, 1 input or validation error, 2 identity or golden-table
failure, 3 the compared E0 subspaces differ (a finding, not an error).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .calculus import check_weight_orthogonal
from .lie import require_valid
from .subcomplex import DIFFERENTIALS, build_subcomplex, ce_cohomology_oracle, compare_e0

EXIT_OK, EXIT_INPUT, EXIT_IDENTITY, EXIT_DIFFERS = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _load_valid(source: str):
    spec = io.load_algebra(source)
    require_valid(spec)
    return spec


def _gram(source, spec):
    G = io.load_gram(source, spec.n)
    if G is not None:
        check_weight_orthogonal(G, spec.weights)
    return G


def cmd_validate(args) -> int:
    try:
        spec = io.load_algebra(args.source)
    except io.InputError as e:
        print(json.dumps({"ok": False, "errors": [e.as_dict()]}, indent=2))
        return EXIT_INPUT
    except ValueError as e:
        print(json.dumps({"ok": False, "errors": [{"path": "", "message": str(e)}]}, indent=2))
        return EXIT_INPUT
    doc = io.validation_document(spec)
    print(json.dumps(doc, indent=2))
    return EXIT_OK if doc["ok"] else EXIT_INPUT


def cmd_subcomplex(args) -> int:
    try:
        spec = _load_valid(args.source)
        G = _gram(args.gram, spec)
        report = build_subcomplex(spec, G, args.differential)
    except ValueError as e:
        _err(str(e))
        return EXIT_INPUT
    if args.output == "structured":
        sys.stdout.write(io.dumps(io.report_to_dict(report, args.emit_matrices)))
    else:
        sys.stdout.write(io.report_to_text(report, args.emit_matrices))
    failure = report.first_failure()
    if failure is not None:
        name, entry = failure
        _err(f"identity failed: {name}: {entry.witness}")
        return EXIT_IDENTITY
    return EXIT_OK


def cmd_compare(args) -> int:
    try:
        spec = _load_valid(args.source)
        Ga = _gram(args.gram_a, spec)
        Gb = _gram(args.gram_b, spec)
        res = compare_e0(spec, Ga, Gb)
    except ValueError as e:
        _err(str(e))
        return EXIT_INPUT
    print(res.describe())
    if res.equal:
        return EXIT_OK
    print(f"witness degree: {res.degree}")
    return EXIT_DIFFERS


def cmd_contact(args) -> int:
    from .contact import emit_lines, verify_printed_tables
    if args.emit:
        for line in emit_lines():
            print(line)
        return EXIT_OK
    res = verify_printed_tables()
    for name, ok in res.checks.items():
        print(f"[{'pass' if ok else 'FAIL'}] {name}")
    for m in res.mismatches:
        print(f"[FAIL] table {m.describe()}")
    if res.ok:
        print("all tables match")
        return EXIT_OK
    print(f"{len(res.mismatches)} table entries and {len(res.failures)} checks differ")
    return EXIT_IDENTITY


def cmd_oracle(args) -> int:
    try:
        spec = _load_valid(args.source)
    except ValueError as e:
        _err(str(e))
        return EXIT_INPUT
    betti = ce_cohomology_oracle(spec)
    print(f"{spec.name}: Betti " + "(" + ", ".join(map(str, betti)) + ")")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rumin", description="Exact Rumin-type subcomplexes of filtered Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check Jacobi and filtration for an algebra file")
    v.add_argument("source", help="algebra file or builtin:NAME")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("subcomplex", help="build (E0, D) and check every identity")
    s.add_argument("source")
    s.add_argument("--gram", default="identity", help="Gram file on covectors, or 'identity'")
    s.add_argument("--differential", choices=DIFFERENTIALS, default="full")
    s.add_argument("--output", choices=("text", "structured"), default="text")
    s.add_argument("--emit-matrices", action="store_true")
    s.set_defaults(func=cmd_subcomplex)

    c = sub.add_parser("compare", help="compare E0 for two metrics")
    c.add_argument("source")
    c.add_argument("--gram-a", default="identity")
    c.add_argument("--gram-b", default="identity")
    c.set_defaults(func=cmd_compare)

    t = sub.add_parser("contact", help="symbolic contact-frame tables")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", action="store_true", help="verify against the printed tables")
    g.add_argument("--emit", action="store_true", help="print every table in canonical form")
    t.set_defaults(func=cmd_contact)

    o = sub.add_parser("oracle", help="Chevalley-Eilenberg Betti numbers")
    o.add_argument("source")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
