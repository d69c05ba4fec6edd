"""Exhaustive and sampled census of small weighted oriented chordal graphs.

Every instance is classified combinatorially and, when its polarization is
small enough, checked against the homological oracle. The report holds
counts only (no timings) so that a fixed configuration reproduces it byte
for byte.
"""
from __future__ import annotations

import itertools
import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .classification import classify
from .covers import DEFAULT_CAP
from .errors import BudgetExceeded, InvalidGraphError
from .graph_core import WeightedOrientedGraph
from .graph_io import document_from_dict, graph_to_dict
from .monomial_algebra import edge_ideal
from .oracle import ORACLE_CAP, oracle_verify, polarize

log = logging.getLogger(__name__)

EXHAUSTIVE_GRAPH_LIMIT = 6


@dataclass
class CensusConfig:
    max_n: int = 4
    weight_set: tuple[int, ...] = (1, 2)
    mode: str = "exhaustive"  # or "sampled"
    seed: int | None = None
    count: int = 16  # orientations per graph in sampled mode
    graphs_per_size: int = 8  # random chordal graphs per size above the exhaustive limit
    instance_budget: float | None = None
    total_budget: float | None = None
    oracle_cap: int = ORACLE_CAP
    jobs: int = 1

    def validate(self):
        if not 1 <= self.max_n <= DEFAULT_CAP:
            raise InvalidGraphError(f"max_n must be between 1 and {DEFAULT_CAP}")
        if self.mode not in ("exhaustive", "sampled"):
            raise InvalidGraphError(f"unknown orientation mode {self.mode!r}")
        if self.mode == "sampled" and self.seed is None:
            raise InvalidGraphError("sampled mode needs a seed")
        if self.max_n > EXHAUSTIVE_GRAPH_LIMIT and self.seed is None:
            raise InvalidGraphError(
                f"graphs above {EXHAUSTIVE_GRAPH_LIMIT} vertices are sampled; give a seed"
            )
        if not self.weight_set or any(w < 1 for w in self.weight_set):
            raise InvalidGraphError("weight_set must be non-empty positive integers")
        if self.jobs < 1:
            raise InvalidGraphError("jobs must be >= 1")


# --- graph generation -------------------------------------------------------

def canonical_form(n: int, edges) -> tuple[int, ...]:
    """Canonical edge list: lexicographically least relabelling, by brute force."""
    edges = list(edges)
    best = None
    for perm in itertools.permutations(range(n)):
        cand = tuple(sorted((min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in edges))
        if best is None or cand < best:
            best = cand
    return best


def _cliques_of(n: int, edges) -> list[tuple[int, ...]]:
    adj = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    out = []
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            if all(b in adj[a] for a, b in itertools.combinations(sub, 2)):
                out.append(sub)
    return out


def connected_chordal_graphs(n: int) -> list[tuple[tuple[int, int], ...]]:
    """All connected chordal graphs on ``n`` vertices up to isomorphism.

    Grown by attaching a new vertex to a clique; removing a simplicial vertex
    keeps a connected chordal graph connected and chordal, so every class is
    reached. Duplicates are rejected by :func:`canonical_form`.
    """
    if n < 1:
        return []
    level = {()}
    for size in range(1, n):
        nxt = set()
        for edges in level:
            for clique in _cliques_of(size, edges):
                grown = list(edges) + [(v, size) for v in clique]
                nxt.add(canonical_form(size + 1, grown))
        level = nxt
    return sorted(level, key=lambda e: (len(e), e))


def random_chordal_graph(n: int, rng: random.Random) -> tuple[tuple[int, int], ...]:
    """Connected chordal graph built along a random perfect elimination ordering."""
    adj = [set() for _ in range(n)]
    edges = []
    for v in range(1, n):
        anchor = rng.randrange(v)
        clique = [anchor] + [u for u in sorted(adj[anchor]) if rng.random() < 0.5]
        # keep only a clique: drop members not adjacent to all earlier picks
        kept = []
        for u in clique:
            if all(u in adj[k] for k in kept):
                kept.append(u)
        for u in kept:
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
    return tuple(sorted(edges))


# --- instances ----------------------------------------------------------------

def _names(n):
    return tuple(f"x{i}" for i in range(1, n + 1))


def _weightings(n, arcs, weight_set):
    has_in = {j for _, j in arcs}
    choices = [sorted(set(weight_set)) if v in has_in else [1] for v in range(n)]
    return itertools.product(*choices)


def _orientations(edges, mode, rng, count):
    e = len(edges)
    if mode == "exhaustive" or 2**e <= count:
        codes = range(2**e)
    else:
        codes = sorted(rng.sample(range(2**e), count))
    for code in codes:
        yield tuple(sorted((j, i) if code >> k & 1 else (i, j) for k, (i, j) in enumerate(edges)))


def _graph_units(config: CensusConfig):
    """Work units: (n, edges, orientation_seed) in deterministic order."""
    rng = random.Random(config.seed)
    units = []
    for n in range(1, config.max_n + 1):
        if n <= EXHAUSTIVE_GRAPH_LIMIT:
            graphs = connected_chordal_graphs(n)
        else:
            graphs = sorted({random_chordal_graph(n, rng) for _ in range(config.graphs_per_size)})
        for edges in graphs:
            units.append((n, edges, rng.randrange(2**32)))
    return units


def instances_for(n, edges, config: CensusConfig, orientation_seed: int):
    rng = random.Random(orientation_seed)
    names = _names(n)
    for arcs in _orientations(edges, config.mode, rng, config.count):
        for ws in _weightings(n, arcs, config.weight_set):
            yield WeightedOrientedGraph(names, tuple(ws), arcs)


# --- evaluation ---------------------------------------------------------------

COUNTERS = (
    "total",
    "applicable",
    "unmixed",
    "cohen_macaulay",
    "gorenstein",
    "oracle_checked",
    "oracle_cm",
    "oracle_skipped_cap",
    "oracle_timeouts",
    "mismatches",
    "cm_not_unmixed",
    "gorenstein_violations",
)


def evaluate(D: WeightedOrientedGraph, config: CensusConfig, memos=None) -> tuple[dict, list]:
    """Classify one instance, run the oracle if it fits, and return
    (counter increments, mismatch records)."""
    inc = dict.fromkeys(COUNTERS, 0)
    problems = []
    inc["total"] = 1
    report = classify(D)
    inc["applicable"] = int(report.applicable)
    inc["unmixed"] = int(report.unmixed)
    inc["cohen_macaulay"] = int(bool(report.cohen_macaulay))
    inc["gorenstein"] = int(bool(report.gorenstein))

    oracle_cm = None
    nvars = len(polarize(edge_ideal(D)).ideal.universe)
    if nvars > config.oracle_cap:
        inc["oracle_skipped_cap"] = 1
    else:
        try:
            orc = oracle_verify(
                D, cap=config.oracle_cap, budget=config.instance_budget,
                classification=report, memos=memos,
            )
        except BudgetExceeded:
            inc["oracle_timeouts"] = 1
        else:
            inc["oracle_checked"] = 1
            oracle_cm = orc.cohen_macaulay["F2"]
            inc["oracle_cm"] = int(all(orc.cohen_macaulay.values()))
            problems.extend(orc.mismatches)
            if any(orc.cohen_macaulay.values()) and not report.unmixed:
                inc["cm_not_unmixed"] = 1
                problems.append("oracle Cohen-Macaulay but not unmixed")

    if report.gorenstein is not None:
        matching = report.edgeless or all(
            len([a for a in D.arcs if v in a]) <= 1 for v in range(D.n)
        )
        bad = report.gorenstein != matching
        if report.gorenstein:
            bad |= len(edge_ideal(D)) != report.height
            bad |= oracle_cm is False
        if bad:
            inc["gorenstein_violations"] = 1
            problems.append("Gorenstein verdict inconsistent")
    if problems:
        inc["mismatches"] = 1
    return inc, problems


def _run_unit(args):
    n, edges, seed, config = args
    memos = {}
    counts = dict.fromkeys(COUNTERS, 0)
    mismatches = []
    for D in instances_for(n, edges, config, seed):
        inc, problems = evaluate(D, config, memos)
        for k, v in inc.items():
            counts[k] += v
        if problems:
            mismatches.append({"graph": graph_to_dict(D), "problems": problems})
    return n, counts, mismatches


@dataclass
class CensusReport:
    config: dict
    complete: bool
    by_size: dict = field(default_factory=dict)
    totals: dict = field(default_factory=dict)
    graphs: dict = field(default_factory=dict)
    mismatch_instances: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def run_census(config: CensusConfig, counterexample_path=None) -> CensusReport:
    config.validate()
    units = _graph_units(config)
    start = time.monotonic()
    totals = dict.fromkeys(COUNTERS, 0)
    by_size = {}
    graphs = {}
    mismatches = []
    complete = True

    work = [(n, edges, seed, config) for n, edges, seed in units]
    if config.jobs > 1:
        pool = ProcessPoolExecutor(max_workers=config.jobs)
        results = pool.map(_run_unit, work)
    else:
        pool = None
        results = map(_run_unit, work)
    try:
        for n, counts, found in results:
            key = str(n)
            bucket = by_size.setdefault(key, dict.fromkeys(COUNTERS, 0))
            graphs[key] = graphs.get(key, 0) + 1
            for k, v in counts.items():
                bucket[k] += v
                totals[k] += v
            mismatches.extend(found)
            if config.total_budget is not None and time.monotonic() - start > config.total_budget:
                complete = False
                log.warning("census budget exhausted after %d instances", totals["total"])
                break
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)

    mismatches.sort(key=lambda m: json.dumps(m, sort_keys=True))
    if counterexample_path is not None and mismatches:
        with open(counterexample_path, "w", encoding="utf-8") as fh:
            for m in mismatches:
                fh.write(json.dumps(m, sort_keys=True) + "\n")
    cfg = asdict(config)
    cfg.pop("jobs")
    cfg.pop("total_budget")
    cfg["weight_set"] = list(config.weight_set)
    return CensusReport(cfg, complete, by_size, totals, graphs, mismatches)


def replay(record: dict) -> list[str]:
    """Re-evaluate one counterexample record; returns the problems found now."""
    D = document_from_dict(record["graph"]).graph
    _, problems = evaluate(D, CensusConfig(oracle_cap=max(ORACLE_CAP, 64)))
    return problems

