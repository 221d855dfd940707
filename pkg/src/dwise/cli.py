"""Command-line entry point.

Families travel on stdin/stdout in the text format by default; ``--json``
switches both parsing and printing to the JSON format.  Exit codes: 0 all
good, 2 assert-severity counterexample, 3 inconclusive (budget), 64 usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks, constructions, patterns, search, sunflowers
from .families import (
    Family,
    common_intersection,
    is_d_wise_intersecting,
    link,
    min_degree,
    min_m_wise_intersection,
)
from .fileio import (
    FamilyParseError,
    format_family_json,
    format_family_text,
    parse_family_json,
    parse_family_text,
)

USAGE_ERROR = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _read_family(path: str | None, as_json: bool) -> Family:
    text = sys.stdin.read() if path in (None, "-") else open(path).read()
    return parse_family_json(text) if as_json else parse_family_text(text)


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _emit_family(fam: Family, args) -> None:
    text = format_family_json(fam) if args.json else format_family_text(fam)
    _write(text, getattr(args, "out", None))


def _parse_elements(spec: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in spec.split(",") if p != "")
    except ValueError:
        raise FamilyParseError(1, f"not a comma-separated integer list: {spec!r}")


def _parse_pattern(spec: str) -> frozenset:
    members = []
    for part in spec.split(";"):
        part = part.strip()
        members.append(frozenset(int(p) for p in part.split(",") if p != ""))
    return frozenset(members)


def _parse_blocks(spec: str) -> patterns.Partition:
    return patterns.Partition(
        tuple(tuple(int(p) for p in blk.split(",")) for blk in spec.split("|"))
    )


def _report_json(rep: checks.CheckReport) -> dict:
    return {
        "check": rep.check_id,
        "status": rep.status,
        "severity": rep.severity,
        "detail": rep.detail,
        "witness": _plain(rep.witness),
    }


def _plain(obj):
    """Best-effort JSON-friendly rendering of witnesses."""
    if obj is None or isinstance(obj, (int, str, bool)):
        return obj
    if isinstance(obj, bytes):
        return obj.decode()
    if isinstance(obj, Family):
        return [list(s) for s in obj.sets]
    if isinstance(obj, search.SearchReport):
        return obj.to_json_dict()
    if isinstance(obj, search.IsoClass):
        return {"classification": obj.classification, "sets": _plain(obj.family)}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [_plain(x) for x in obj]
    return repr(obj)


def _print_reports(reports: list[checks.CheckReport], as_json: bool) -> int:
    if as_json:
        print(json.dumps([_report_json(r) for r in reports], sort_keys=True))
    else:
        for r in reports:
            line = f"{r.check_id}: {r.status} [{r.severity}]"
            if r.detail:
                line += f" - {r.detail}"
            print(line)
    return checks.worst_exit_code(reports)


def build_parser() -> _Parser:
    top = _Parser(prog="dwise", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--json", action="store_true", help="JSON input/output")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
        return p

    p = add("gen", help="materialize a reference family")
    p.add_argument("--kind", required=True, choices=constructions.KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--out")

    p = add("size", help="closed-form family size")
    p.add_argument("--kind", required=True, choices=constructions.KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--enumerate", action="store_true", dest="enum",
                   help="cross-check the formula by enumeration")

    p = add("n0", help="sufficiency threshold for the extremal theorem")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("check", help="d-wise intersection / triviality of a family")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("family", nargs="?")

    p = add("mindeg", help="minimum element degree")
    p.add_argument("family", nargs="?")

    p = add("link", help="link of a set in the family")
    p.add_argument("--set", required=True, dest="elements")
    p.add_argument("--out")
    p.add_argument("family", nargs="?")

    p = add("core-degree", help="maximum sunflower petal count over a core")
    p.add_argument("--set", required=True, dest="elements")
    p.add_argument("--cap", type=int)
    p.add_argument("family", nargs="?")

    p = add("sd", help="d-sets of large core degree")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--tau", type=int)
    p.add_argument("family", nargs="?")

    p = add("classify-sd", help="shape of a pairwise near-equal d-set family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("family", nargs="?")

    p = add("pattern", help="intersection pattern of an edge")
    p.add_argument("--blocks", required=True)
    p.add_argument("--edge", required=True)
    p.add_argument("family", nargs="?")

    p = add("rank", help="rank of an intersection pattern")
    p.add_argument("--j", required=True, dest="pattern")
    p.add_argument("--k", type=int, required=True)

    p = add("homogenize", help="extract a constant-pattern subfamily")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("family", nargs="?")

    p = add("search", help="exact maximum non-trivial d-wise intersecting family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, default=search.DEFAULT_NODE_BUDGET)
    p.add_argument("--budget-seconds", type=float, default=search.DEFAULT_TIME_BUDGET)
    p.add_argument("--threads", type=int)

    p = add("canon", help="canonical form of a family")
    p.add_argument("family", nargs="?")

    p = add("iso", help="are two families isomorphic?")
    p.add_argument("family_a")
    p.add_argument("family_b")

    p = add("saturate", help="close under lex-least admissible additions")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("family", nargs="?")

    p = add("verify", help="verifier suites")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--suite", choices=["lemmas"])
    mode.add_argument("--small", action="store_true")
    mode.add_argument("--structure", action="store_true")
    p.add_argument("--d", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--budget-nodes", type=int, default=search.DEFAULT_NODE_BUDGET)
    p.add_argument("--budget-seconds", type=float, default=search.DEFAULT_TIME_BUDGET)
    p.add_argument("family", nargs="?")

    p = add("probe", help="extremal classes against the reference families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, default=search.DEFAULT_NODE_BUDGET)
    p.add_argument("--budget-seconds", type=float, default=search.DEFAULT_TIME_BUDGET)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except FamilyParseError as exc:
        print(f"dwise: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, OSError) as exc:
        print(f"dwise: {exc}", file=sys.stderr)
        return USAGE_ERROR


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "gen":
        _emit_family(constructions.generate(args.kind, args.n, args.k, args.d), args)
        return 0

    if cmd == "size":
        value = constructions.closed_size(args.kind, args.n, args.k, args.d)
        if args.enum:
            enum = len(constructions.generate(args.kind, args.n, args.k, args.d))
            agree = value == enum
            if args.json:
                print(json.dumps({"closed": value, "enumerated": enum, "agree": agree}))
            else:
                print(f"closed={value} enumerated={enum} agree={agree}")
            return 0 if agree else 2
        print(json.dumps({"closed": value}) if args.json else value)
        return 0

    if cmd == "n0":
        print(constructions.threshold_n0(args.k, args.d))
        return 0

    if cmd == "check":
        fam = _read_family(args.family, args.json)
        dwise = is_d_wise_intersecting(fam, args.d)
        common = common_intersection(fam)
        info = {
            "sets": len(fam),
            "d_wise": dwise,
            "common_intersection": list(common),
            "non_trivial": not common,
        }
        print(json.dumps(info) if args.json else
              f"sets={len(fam)} d_wise={dwise} common={list(common)}")
        return 0 if dwise else 2

    if cmd == "mindeg":
        fam = _read_family(args.family, args.json)
        element, degree = min_degree(fam)
        print(json.dumps({"element": element, "degree": degree}) if args.json
              else f"element={element} degree={degree}")
        return 0

    if cmd == "link":
        fam = _read_family(args.family, args.json)
        _emit_family(link(fam, _parse_elements(args.elements)), args)
        return 0

    if cmd == "core-degree":
        fam = _read_family(args.family, args.json)
        value, delta = sunflowers.core_degree_witness(
            fam, _parse_elements(args.elements), cap=args.cap
        )
        if args.json:
            print(json.dumps({"core_degree": value, "petals": [list(p) for p in delta.petals]}))
        else:
            print(f"core_degree={value} petals={[list(p) for p in delta.petals]}")
        return 0

    if cmd == "sd":
        fam = _read_family(args.family, args.json)
        sd = sunflowers.large_core_sets(fam, args.d, args.tau)
        if args.json:
            print(json.dumps({"d": sd.d, "tau": sd.tau,
                              "members": [list(m) for m in sd.members]}))
        else:
            print(f"tau={sd.tau} members={len(sd.members)}")
            for m in sd.members:
                print(",".join(map(str, m)))
        return 0

    if cmd == "classify-sd":
        fam = _read_family(args.family, args.json)
        c = sunflowers.classify_intersecting_dsets(fam.sets, args.k, args.d)
        out = {
            "kind": c.kind,
            "kernel": list(c.kernel) if c.kernel else None,
            "window": list(c.window) if c.window else None,
            "vertices": list(c.vertices) if c.vertices else None,
            "violating_pair": _plain(c.violating_pair),
        }
        print(json.dumps(out) if args.json else f"kind={c.kind} {out}")
        return 0 if c.kind != "not_intersecting" else 2

    if cmd == "pattern":
        fam = _read_family(args.family, args.json)
        j = patterns.intersection_pattern(
            fam, _parse_blocks(args.blocks), _parse_elements(args.edge)
        )
        rendered = sorted(sorted(m) for m in j)
        print(json.dumps(rendered) if args.json else
              ";".join(",".join(map(str, m)) for m in rendered))
        return 0

    if cmd == "rank":
        print(patterns.rank(_parse_pattern(args.pattern), args.k))
        return 0

    if cmd == "homogenize":
        fam = _read_family(args.family, args.json)
        res = patterns.greedy_homogenize(fam, args.s)
        pat = sorted(sorted(m) for m in res.pattern)
        if args.json:
            print(json.dumps({
                "family": _plain(res.family),
                "blocks": [list(b) for b in res.partition.blocks],
                "pattern": pat,
                "level": res.level,
            }))
        else:
            print(f"kept={len(res.family)} level={res.level} "
                  f"blocks={[list(b) for b in res.partition.blocks]} pattern={pat}")
            sys.stdout.write(format_family_text(res.family))
        return 0

    if cmd == "search":
        rep = search.search_max(
            args.n, args.k, args.d,
            node_budget=args.budget_nodes,
            time_budget=args.budget_seconds,
            threads=args.threads,
        )
        if args.json:
            print(rep.to_json())
        else:
            print(f"max_size={rep.max_size} classes={len(rep.iso_classes)} "
                  f"nodes={rep.nodes} exhausted={rep.exhausted}")
            for c in rep.iso_classes:
                print(f"  [{c.classification}] " +
                      " ".join(",".join(map(str, s)) for s in c.family.sets))
        return 0 if rep.exhausted else 3

    if cmd == "canon":
        fam = _read_family(args.family, args.json)
        cf = search.canonical_form(fam)
        if args.json:
            print(json.dumps({"encoding": cf.encoding.decode(),
                              "representative": _plain(cf.representative)}))
        else:
            print(cf.encoding.decode())
        return 0

    if cmd == "iso":
        fa = parse_family_json(open(args.family_a).read()) if args.json \
            else parse_family_text(open(args.family_a).read())
        fb = parse_family_json(open(args.family_b).read()) if args.json \
            else parse_family_text(open(args.family_b).read())
        same = search.are_isomorphic(fa, fb)
        print(json.dumps({"isomorphic": same}) if args.json else f"isomorphic={same}")
        return 0 if same else 2

    if cmd == "saturate":
        fam = _read_family(args.family, args.json)
        _emit_family(search.saturate(fam, args.d), args)
        return 0

    if cmd == "verify":
        if args.suite == "lemmas":
            if args.d is None:
                raise ValueError("verify --suite lemmas needs --d")
            fam = _read_family(args.family, args.json)
            reports = checks.run_lemma_suite(fam, args.d, args.tau)
            return _print_reports(reports, args.json)
        if args.small:
            if None in (args.n, args.k, args.d):
                raise ValueError("verify --small needs --n --k --d")
            rep = checks.verify_small_cases(
                args.n, args.k, args.d,
                node_budget=args.budget_nodes, time_budget=args.budget_seconds,
            )
            return _print_reports([rep], args.json)
        if args.structure:
            if args.d is None:
                raise ValueError("verify --structure needs --d")
            fam = _read_family(args.family, args.json)
            return _print_reports([checks.structure_bound_check(fam, args.d)], args.json)
        raise ValueError("choose one of --suite lemmas, --small, --structure")

    if cmd == "probe":
        rep = checks.conjecture_probe(
            args.n, args.k, args.d,
            node_budget=args.budget_nodes, time_budget=args.budget_seconds,
        )
        return _print_reports([rep], args.json)

    raise ValueError(f"unknown command {cmd!r}")


if __name__ == "__main__":
    sys.exit(main())
