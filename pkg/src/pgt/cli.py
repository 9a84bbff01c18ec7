"""``pgt``: construct, inspect and verify groups from the command line.

Exit status: 0 when every check passes, 1 when a mathematical counterexample
is found (its JSON witness goes to standard output), 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from . import __version__, config
from .catalog import CATALOG, CONSTRUCTORS, catalog_group
from .centralizers import center, parameters
from .errors import AbelianGroup, NotPrimePower, PGTError
from .groups import subgroup_from_generators
from .io import GroupFileError, dump_group, load_group
from .maxabelian import bound_certificate, enumerate_maximal_abelian
from .ses import fingerprint, fingerprint_compare, is_semi_extraspecial, is_ultraspecial, ses_certificate
from .suites import SUITES, emit_report, run_all, run_suite


def _group(arg: str):
    """A group file, or a catalog name when no such file exists."""
    if Path(arg).exists() or arg.endswith(".json"):
        return load_group(arg)
    return catalog_group(arg)


def _print_json(doc):
    print(json.dumps(doc, indent=1))


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    name = args.name
    if name in CONSTRUCTORS:
        fn, pnames = CONSTRUCTORS[name]
        given = {k: getattr(args, k) for k in pnames if getattr(args, k) is not None}
        missing = [k for k in pnames if k not in given and not (name.startswith("example") and k == "p")]
        if missing:
            raise PGTError(f"construct {name} needs --{' --'.join(missing)}")
        G = fn(**given)
        if pnames:
            G.name = "-".join([name] + [str(given.get(k, 3)) for k in pnames])
        else:
            G.name = name
    else:
        G = catalog_group(name)
    text = dump_group(G, args.output)
    if args.output is None:
        sys.stdout.write(text)
    return 0


def cmd_info(args) -> int:
    G = _group(args.file)
    lines = [f"model={G.model}"]
    pp = G.prime_power
    if pp:
        lines.append(f"p={pp[0]}")
    lines.append(f"|G|={G.order}")
    lines.append(f"|Z(G)|={center(G).order}")
    try:
        P = parameters(G)
        lines += [f"n_total={P.n_total}", f"m={P.m}", f"b={P.b}", f"l={P.l}"]
        ses = is_semi_extraspecial(G)
        lines.append(f"semi_extraspecial={str(ses).lower()}")
        if ses:
            lines.append(f"ultraspecial={str(is_ultraspecial(G)).lower()}")
            lines.append(f"k={'none' if P.k is None else P.k}")
    except NotPrimePower:
        lines.append("p-group=false")
    except AbelianGroup:
        lines.append("abelian=true")
    print("\n".join(lines))
    return 0


def _describe(G, A) -> dict:
    doc = {"order": A.order}
    if G.model == "bilinear":
        doc["v_basis"] = A.vpart.basis.tolist()
    else:
        doc["elements"] = [int(x) for x in A.elements()]
    return doc


def cmd_maxabel(args) -> int:
    G = _group(args.file)
    subs = enumerate_maximal_abelian(G)
    orders = dict(sorted(Counter(A.order for A in subs).items()))
    doc = {"group": G.name, "count": len(subs), "orders": {str(k): v for k, v in orders.items()}}
    if args.all:
        doc["subgroups"] = [_describe(G, A) for A in subs]
    _print_json(doc)
    return 0


def cmd_certify(args) -> int:
    G = _group(args.file)
    if args.subgroup:
        try:
            gens = [int(x) for x in args.subgroup.replace(",", " ").split()]
        except ValueError as exc:
            raise PGTError(f"--subgroup expects element indices, got {args.subgroup!r}") from exc
        bad = [g for g in gens if not 0 <= g < G.order]
        if bad:
            raise PGTError(f"--subgroup: element {bad[0]} out of range 0..{G.order - 1}")
        zgens = [int(z) for z in center(G).elements()] if G.order <= config.TABLE_CAP else []
        subs = [subgroup_from_generators(G, gens + zgens)]
    else:
        subs = enumerate_maximal_abelian(G)
    certs = [bound_certificate(G, A).to_json() for A in subs]
    doc = {"group": G.name, "certificates": certs}
    if G.is_p_group and is_semi_extraspecial(G):
        sc = ses_certificate(G)
        doc["ses_certificate"] = sc.to_json()
        ok_ses = sc.holds
    else:
        ok_ses = True
    failed = [c for c in certs if not c["valid"]]
    if failed or not ok_ses:
        doc["counterexamples"] = failed
    _print_json(doc)
    return 1 if failed or not ok_ses else 0


def cmd_verify(args) -> int:
    groups = [_group(f) for f in args.files]
    report = run_suite(args.suite, groups, max_order=args.max_order, max_tuples=args.max_tuples)
    sys.stdout.write(emit_report(report, args.format))
    return 0 if report.passed else 1


def cmd_catalog(args) -> int:
    if args.run_all:
        report = run_all(max_order=args.max_order, max_tuples=args.max_tuples)
        sys.stdout.write(emit_report(report, args.format))
        return 0 if report.passed else 1
    if args.format == "csv":
        print("name,constructor,params")
        for e in CATALOG.values():
            print(f"{e.name},{e.constructor},\"{json.dumps(e.params, sort_keys=True)}\"")
    else:
        _print_json(
            [
                {"name": e.name, "constructor": e.constructor, "params": e.params, "expected": e.expected,
                 "source": e.source}
                for e in CATALOG.values()
            ]
        )
    return 0


def cmd_fingerprint(args) -> int:
    G1, G2 = _group(args.file1), _group(args.file2)
    F1, F2 = fingerprint(G1), fingerprint(G2)
    _print_json({"first": F1.to_json(), "second": F2.to_json(), **fingerprint_compare(F1, F2)})
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgt", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"pgt {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a named group and write its group file")
    c.add_argument("name", help=f"one of {', '.join(CONSTRUCTORS)} or a catalog name")
    for flag in ("p", "a", "n", "k"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("-o", "--output", help="output file (default: standard output)")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("info", help="order, center and the parameters n_total, m, b, l")
    c.add_argument("file")
    c.set_defaults(func=cmd_info)

    c = sub.add_parser("maxabel", help="enumerate maximal abelian subgroups")
    c.add_argument("file")
    c.add_argument("--all", action="store_true", help="list every subgroup")
    c.set_defaults(func=cmd_maxabel)

    c = sub.add_parser("certify", help="bound certificates for maximal abelian subgroups")
    c.add_argument("file")
    c.add_argument("--subgroup", help="element indices generating (with Z(G)) one maximal abelian subgroup")
    c.set_defaults(func=cmd_certify)

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-order", type=int, default=config.ORACLE_ORDER_CAP,
                      help="largest group order expanded to a table for the oracle suite")
    caps.add_argument("--max-tuples", type=int, default=config.OPENQ_MAX_TUPLES,
                      help="sampled tuples for the open-question suite above the exhaustive cap")
    caps.add_argument("--format", choices=("json", "csv"), default="json")

    c = sub.add_parser("verify", parents=[caps], help="run one verification suite")
    c.add_argument("--suite", choices=SUITES, required=True)
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", parents=[caps], help="list the catalog or run every suite on it")
    c.add_argument("--run-all", action="store_true")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("fingerprint", help="compare isoclinism fingerprints of two groups")
    c.add_argument("file1")
    c.add_argument("file2")
    c.set_defaults(func=cmd_fingerprint)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except GroupFileError as exc:
        print(f"pgt: error: {exc}", file=sys.stderr)
        return 2
    except PGTError as exc:
        print(f"pgt: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
