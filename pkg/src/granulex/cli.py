"""Command-line front end.

Exit status: 0 on success, 1 when ``verify`` finds a violation, 2 on usage or
domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import classes, measures, morphisms, verify
from .formats import InformationTable, fmt, ingest_table, load_space, space_to_dict
from .space import CapacityError, DomainError, rough_pair

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def cmd_approx(args) -> int:
    space = load_space(args.space)
    x = space.universe.subset(_split(args.subset))
    pair = rough_pair(space, x)
    _emit({
        "subset": space.universe.labels_of(x),
        "lower": space.universe.labels_of(pair.lower),
        "upper": space.universe.labels_of(pair.upper),
    })
    return EXIT_OK


def cmd_classes(args) -> int:
    space = load_space(args.space)
    if args.method == "bruteforce":
        profile = classes.classify_bruteforce(space, cutoff=args.brute_cutoff, members=args.members)
    else:
        if args.members:
            raise DomainError("--members requires --method bruteforce")
        profile = classes.classify_closed_form(space)
    labels = space.universe.labels_of
    out = []
    for c in profile.classes:
        entry = {"lower": labels(c.lower), "upper": labels(c.upper), "count": str(c.count)}
        if c.members is not None:
            entry["members"] = [labels(x) for x in c.members]
        out.append(entry)
    _emit({"m": profile.m, "classes": out})
    return EXIT_OK


def cmd_entropy(args) -> int:
    space = load_space(args.space)
    rep = measures.measure_report(space, method=args.method)
    out = {
        "n": rep.n,
        "m": rep.m,
        "h_classical": fmt(rep.h_classical),
        "g_classical": fmt(rep.g_classical),
        "h_new": fmt(rep.h_new),
        "g_new": fmt(rep.g_new),
    }
    if args.exact_terms:
        out["terms"] = [
            {"count": str(r), "log2_count": fmt(lg), "classes": str(mult)}
            for r, lg, mult in measures.exact_terms(space)
        ]
    _emit(out)
    return EXIT_OK


def cmd_compare(args) -> int:
    source, target = load_space(args.source), load_space(args.target)
    if args.map is not None:
        fmap = morphisms.SpaceMap.parse(source, target, args.map)
    else:
        fmap = morphisms.embeddable(source, target)
        if fmap is None:
            _emit({"kind": None, "verdict": None, "reason": "no monomorphism exists"})
            return EXIT_USAGE
    kind = morphisms.classify_map(fmap)
    out = {"kind": kind.value, "map": fmap.as_labels()}
    if kind.is_monomorphism:
        verdict = morphisms.compare_coentropy(fmap)
        out.update(
            verdict=verdict.relation.value,
            witness=verdict.witness,
            g_source=fmt(verdict.g_source),
            g_target=fmt(verdict.g_target),
        )
    else:
        out["verdict"] = None
        out["reason"] = "map is not a monomorphism"
    _emit(out)
    return EXIT_OK if kind.is_monomorphism else EXIT_USAGE


def cmd_ingest(args) -> int:
    table = InformationTable.read_csv(args.csv)
    attrs = _split(args.attributes) if args.attributes else []
    _emit(space_to_dict(ingest_table(table, attrs, id_column=args.id_column)))
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = verify.verify_all(args.n_max)
    if args.json:
        _emit([r.to_dict(timing=args.timing) for r in reports])
    else:
        width = max(len(r.theorem) for r in reports)
        for r in reports:
            status = "PASS" if r.passed else ("INCOMPLETE" if not r.complete else "FAIL")
            print(f"{r.theorem:<{width}}  {status:<10} {r.instances:>9} instances  "
                  f"{r.violation_count} violations  {r.elapsed:7.2f}s")
            for w in r.violations[:3]:
                print(f"    witness: {w}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="granulex", description="Rough-set approximation spaces and their entropies.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("approx", help="lower/upper approximation of a subset")
    a.add_argument("--space", required=True, help="space JSON file")
    a.add_argument("--subset", required=True, help="comma-separated element labels")
    a.set_defaults(func=cmd_approx)

    c = sub.add_parser("classes", help="approximation classes and their sizes")
    c.add_argument("--space", required=True)
    c.add_argument("--method", choices=["closed-form", "bruteforce"], default="closed-form")
    c.add_argument("--members", action="store_true", help="list member subsets (bruteforce, n <= 16)")
    c.add_argument("--brute-cutoff", type=int, default=None,
                   help="largest n for brute force (default: $GRANULEX_BRUTE_CUTOFF or 24)")
    c.set_defaults(func=cmd_classes)

    e = sub.add_parser("entropy", help="classical and approximation entropies")
    e.add_argument("--space", required=True)
    e.add_argument("--method", choices=list(measures.METHODS), default="closed-form")
    e.add_argument("--exact-terms", action="store_true", help="also list (r, log2 r) terms")
    e.set_defaults(func=cmd_entropy)

    m = sub.add_parser("compare", help="compare co-entropies along a monomorphism")
    m.add_argument("--source", required=True)
    m.add_argument("--target", required=True)
    how = m.add_mutually_exclusive_group(required=True)
    how.add_argument("--map", help='explicit map, e.g. "1:a,2:b"')
    how.add_argument("--search", action="store_true", help="search for a monomorphism")
    m.set_defaults(func=cmd_compare)

    i = sub.add_parser(
        "ingest",
        help="build a space from a CSV table",
        description="Group rows that agree on every selected attribute. With no attributes "
                    "every pair of rows agrees vacuously, giving the one-block partition.",
    )
    i.add_argument("--csv", required=True)
    i.add_argument("--attributes", default="", help="comma-separated column names (empty: one block)")
    i.add_argument("--id-column", default=None)
    i.set_defaults(func=cmd_ingest)

    v = sub.add_parser("verify", help="exhaustively check the theory on small universes")
    v.add_argument("--n-max", type=int, default=7)
    v.add_argument("--json", action="store_true")
    v.add_argument("--timing", action="store_true", help="include elapsed seconds in JSON")
    v.set_defaults(func=cmd_verify)
    return p


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (DomainError, CapacityError, OSError) as exc:
        print(f"granulex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())
