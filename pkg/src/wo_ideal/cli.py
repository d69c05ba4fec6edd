"""Command line entry point: ``wo-ideal {analyze|decompose|classify|oracle|census}``.

Exit codes: 0 success, 2 invalid input, 3 capacity or timeout, 4 internal
invariant violation (including census mismatches).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .census import CensusConfig, replay, run_census
from .classification import classify
from .covers import DEFAULT_CAP, minimal_vertex_covers, strong_vertex_covers
from .errors import BudgetExceeded, InvariantViolation, WoIdealError
from .graph_core import is_chordal, simplex_partition, simplicial_analysis, underlying
from .graph_io import load_graph
from .monomial_algebra import edge_ideal, intersect, primary_decomposition, redundant_components
from .oracle import FIELDS, ORACLE_CAP, oracle_verify

log = logging.getLogger("wo_ideal")


def _analyze(D, args):
    G = underlying(D)
    chordal, cert = is_chordal(G)
    simp = simplicial_analysis(G)
    partition, witness = simplex_partition(G)
    minimal = minimal_vertex_covers(G, args.cap)
    strong = strong_vertex_covers(D, args.cap)
    return {
        "vertices": list(D.vertices),
        "weights": dict(zip(D.vertices, D.weights)),
        "edges": len(G.edges),
        "chordal": chordal,
        "perfect_elimination_ordering" if chordal else "induced_cycle": cert,
        "simplicial_vertices": G.names(simp.simplicial),
        "simplices": [G.names(s) for s in simp.simplices],
        "simplicial_graph": simp.is_simplicial_graph,
        "simplex_partition": None if partition is None else [G.names(b) for b in partition.blocks],
        "simplex_partition_fails_at": witness,
        "minimal_covers": [G.names(c) for c in minimal],
        "minimal_cover_sizes": sorted({c.bit_count() for c in minimal}),
        "strong_cover_count": len(strong),
        "edge_ideal": edge_ideal(D).to_json(),
    }


def _decompose(D, args):
    comps = primary_decomposition(D, args.cap)
    out = {
        "edge_ideal": edge_ideal(D).to_json(),
        "components": [
            {
                "cover": D.names(c.cover.cover),
                "L1": D.names(c.cover.l1),
                "L2": D.names(c.cover.l2),
                "L3": D.names(c.cover.l3),
                "minimal": c.cover.is_minimal,
                "ideal": c.ideal.to_json(),
                "display": str(c.ideal),
            }
            for c in comps
        ],
    }
    if args.verify:
        got = intersect([c.ideal for c in comps])
        out["intersection"] = got.to_json()
        out["intersection_verified"] = got == edge_ideal(D)
        out["redundant_components"] = [D.names(comps[k].cover.cover) for k in redundant_components(comps)]
        if not out["intersection_verified"]:
            raise InvariantViolation(f"components do not intersect to the edge ideal: {out}")
    return out


def _classify(D, args):
    return classify(D, args.cap).to_json()


def _oracle(D, args):
    report = classify(D) if D.n <= DEFAULT_CAP else None
    fields = args.fields or FIELDS
    orc = oracle_verify(
        D, fields=fields, cap=args.cap, force=args.force, budget=args.budget,
        classification=report,
    )
    if orc.mismatches:
        raise InvariantViolation(f"oracle disagrees: {orc.mismatches}")
    return orc.to_json()


def _print(payload, fmt):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
        return
    for key, value in payload.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{key}:")
            for item in value:
                print(f"  - {json.dumps(item)}")
        else:
            print(f"{key}: {json.dumps(value) if not isinstance(value, str) else value}")


def build_parser():
    parser = argparse.ArgumentParser(prog="wo-ideal", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cap_default, cap_help):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--cap", type=int, default=cap_default, help=cap_help)

    for name, helptext in [
        ("analyze", "graph facts: chordality, simplices, covers"),
        ("decompose", "strong covers and the irreducible components"),
        ("classify", "unmixed / Cohen-Macaulay / Gorenstein report"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        common(p, DEFAULT_CAP, "exact-mode vertex cap")
        if name == "decompose":
            p.add_argument("--no-verify", dest="verify", action="store_false",
                           help="skip the intersection check")

    p = sub.add_parser("oracle", help="homological Cohen-Macaulay check")
    p.add_argument("file")
    common(p, ORACLE_CAP, "cap on polarized variables")
    p.add_argument("--force", action="store_true", help="run above the cap")
    p.add_argument("--budget", type=float, default=None, help="wall-clock seconds")
    p.add_argument("--field", dest="fields", action="append", choices=FIELDS)

    p = sub.add_parser("census", help="exhaustive or sampled census")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--weights", default="1,2", help="comma-separated weight set")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=16, help="orientations per graph when sampling")
    p.add_argument("--graphs-per-size", type=int, default=8)
    p.add_argument("--cap", type=int, default=ORACLE_CAP, help="oracle cap on polarized variables")
    p.add_argument("--instance-budget", type=float, default=None)
    p.add_argument("--budget", type=float, default=None, help="total wall-clock seconds")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", help="write the JSON report here")
    p.add_argument("--counterexamples", help="JSON-lines file for mismatching instances")
    p.add_argument("--replay", help="re-run a counterexample file instead of a census")
    return parser


def _census(args):
    if args.replay:
        failing = 0
        with open(args.replay, encoding="utf-8") as fh:
            for line in fh:
                if line.strip() and replay(json.loads(line)):
                    failing += 1
        payload = {"replayed_failures": failing}
        _print(payload, args.format)
        return 4 if failing else 0

    try:
        weights = tuple(int(w) for w in args.weights.split(","))
    except ValueError:
        print(f"error: bad weight set {args.weights!r}", file=sys.stderr)
        return 2
    config = CensusConfig(
        max_n=args.max_n, weight_set=weights, mode=args.mode, seed=args.seed,
        count=args.count, graphs_per_size=args.graphs_per_size,
        instance_budget=args.instance_budget, total_budget=args.budget,
        oracle_cap=args.cap, jobs=args.jobs,
    )
    report = run_census(config, args.counterexamples)
    text = report.dumps()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.format == "json":
        print(text)
    else:
        print(f"complete: {report.complete}")
        for k, v in report.totals.items():
            print(f"{k}: {v}")
    if report.totals["mismatches"]:
        return 4
    return 0 if report.complete else 3


COMMANDS = {"analyze": _analyze, "decompose": _decompose, "classify": _classify, "oracle": _oracle}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "census":
            return _census(args)
        doc = load_graph(args.file)
        _print(COMMANDS[args.command](doc.graph, args), args.format)
        return 0
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.partial is not None:
            print(json.dumps({"partial": exc.partial}, indent=2))
        return exc.exit_code
    except WoIdealError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
