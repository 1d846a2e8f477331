"""Command-line front end.

Subcommands: ``invariants``, ``separate``, ``verify-lemmas``, ``witness``,
``selftest``.  Tuple documents are JSON with every scalar encoded as a
string (rationals as ``n/m``, prime residues as decimals, GF(2^k) elements
as hex), because exact values have no faithful JSON-number encoding:

    {"field": {"kind": "prime", "p": 101},
     "d": 2,
     "tuples": {"u": [[["0","1"],["0","0"]], [["0","0"],["1","0"]]], ...}}

Exit codes: 0 success, 1 failed verification or counterexample, 2 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cases import builtin_case_suite, verify_case
from .errors import MatInv2Error
from .fields import Field, FieldSpec, field_create, parse_field_spec
from .invariants import catalog, fingerprint, parse_descriptor, separated_by
from .matrices import Mat2, MatrixTuple
from .selftests import default_selftest
from .witnesses import witness_for


def field_to_json(spec: FieldSpec) -> dict:
    out = {"kind": spec.kind}
    if spec.p is not None:
        out["p"] = spec.p
    if spec.k is not None:
        out["k"] = spec.k
    return out


def field_from_json(obj: dict) -> Field:
    return field_create(FieldSpec(obj["kind"], p=obj.get("p"), k=obj.get("k")))


def mat_to_json(m: Mat2) -> list:
    ts = m.field.to_str
    return [[ts(m.e11), ts(m.e12)], [ts(m.e21), ts(m.e22)]]


def tuple_to_json(u: MatrixTuple) -> list:
    return [mat_to_json(m) for m in u.mats]


def document_to_json(field: Field, tuples: dict[str, MatrixTuple]) -> dict:
    d = next(iter(tuples.values())).d
    return {
        "field": field_to_json(field.spec),
        "d": d,
        "tuples": {name: tuple_to_json(u) for name, u in tuples.items()},
    }


def parse_document(obj: dict) -> tuple[Field, int, dict[str, MatrixTuple]]:
    field = field_from_json(obj["field"])
    d = obj["d"]
    tuples = {}
    for name, mats in obj["tuples"].items():
        if len(mats) != d:
            raise MatInv2Error(f"tuple {name!r} has {len(mats)} matrices, expected {d}")
        parsed = [
            Mat2.from_rows(field, [[field.parse(s) for s in row] for row in mat])
            for mat in mats
        ]
        tuples[name] = MatrixTuple(parsed)
    return field, d, tuples


def load_document(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_document(json.load(fh))


def cmd_invariants(args) -> int:
    field, d, tuples = load_document(args.input)
    if args.tuple not in tuples:
        print(f"error: no tuple named {args.tuple!r} in {args.input}", file=sys.stderr)
        return 2
    u = tuples[args.tuple]
    cat = catalog(args.set, d, field.characteristic)
    fp = fingerprint(u, cat)
    for desc, value in zip(fp.descriptors, fp.values):
        print(f"{desc} = {field.to_str(value)}")
    return 0


def cmd_separate(args) -> int:
    field, d, tuples = load_document(args.input)
    for name in (args.left, args.right):
        if name not in tuples:
            print(f"error: no tuple named {name!r} in {args.input}", file=sys.stderr)
            return 2
    u, v = tuples[args.left], tuples[args.right]
    cat = catalog(args.set, d, field.characteristic)
    res = separated_by(u, v, cat)
    if args.report == "json":
        doc = {
            "separated": res.separated,
            "witness": str(res.witness) if res.witness else None,
            "fingerprints": {
                args.left: [field.to_str(x) for x in fingerprint(u, cat).values],
                args.right: [field.to_str(x) for x in fingerprint(v, cat).values],
            },
            "descriptors": [str(x) for x in cat],
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif res.separated:
        print(f"SEPARATED by {res.witness}")
    else:
        print("NOT-SEPARATED")
    return 0


def cmd_verify_lemmas(args) -> int:
    suite = builtin_case_suite()
    if args.case:
        suite = [s for s in suite if s.case_id == args.case]
        if not suite:
            print(f"error: no case named {args.case!r}", file=sys.stderr)
            return 2
    if args.ring:
        suite = [s for s in suite if s.ring.name == args.ring]
    failures = 0
    for spec in suite:
        report = verify_case(spec)
        print(report)
        failures += not report.passed
    return 1 if failures else 0


def cmd_witness(args) -> int:
    field = field_create(parse_field_spec(args.field))
    desc = parse_descriptor(args.invariant)
    pair = witness_for(desc, args.d, field)
    doc = document_to_json(field, {"u": pair.u, "v": pair.v})
    doc["distinguishing"] = str(pair.distinguishing)
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def cmd_selftest(args) -> int:
    field = field_create(parse_field_spec(args.field)) if args.field else None
    reports = default_selftest(args.seed, args.iters, args.d, field)
    failures = 0
    for rep in reports:
        print(rep.line())
        failures += rep.failures
    print(("FAIL" if failures else "OK") + f" total_failures={failures}")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matinv2",
        description="Exact conjugation invariants of tuples of 2x2 matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="evaluate a catalog on one tuple")
    p.add_argument("--input", required=True, help="tuple document (JSON)")
    p.add_argument("--tuple", required=True, help="name of the tuple in the document")
    p.add_argument("--set", choices=("S", "G", "Z"), default="S")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("separate", help="decide separation of two tuples")
    p.add_argument("--input", required=True)
    p.add_argument("--left", default="u")
    p.add_argument("--right", default="v")
    p.add_argument("--set", choices=("S", "G"), default="S")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("verify-lemmas", help="run the builtin certificate suite")
    p.add_argument("--case", help="verify a single case id")
    p.add_argument("--ring", choices=("Z", "F2"), help="restrict to one coefficient ring")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("witness", help="emit the minimality witness pair of a descriptor")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--invariant", required=True, help='descriptor text, e.g. "tr(1,2)"')
    p.add_argument("--field", default="rational", help="rational | prime:P | gf2k:K")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("selftest", help="run the randomized property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--field", default=None, help="rational | prime:P | gf2k:K")
    p.set_defaults(func=cmd_selftest)
    return parser


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except MatInv2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
