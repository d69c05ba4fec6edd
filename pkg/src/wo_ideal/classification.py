"""Cohen-Macaulay and Gorenstein verdicts for chordal and simplicial graphs.

For these two graph classes the edge ideal is Cohen-Macaulay exactly when
it is unmixed, and Gorenstein exactly when the graph is a disjoint union of
edges. Outside them no verdict is given here; use :mod:`wo_ideal.oracle`.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .covers import DEFAULT_CAP, minimal_vertex_covers
from .errors import InvariantViolation, NotApplicableError
from .graph_core import (
    WeightedOrientedGraph,
    is_chordal,
    simplex_partition,
    simplicial_analysis,
    underlying,
)
from .monomial_algebra import edge_ideal, is_unmixed


@dataclass
class ClassificationReport:
    vertices: int
    applicable: bool
    chordal: bool
    simplicial_graph: bool
    route: str | None
    edgeless: bool
    unmixed: bool
    cohen_macaulay: bool | None
    gorenstein: bool | None
    height: int
    dimension: int
    m: int | None
    simplex_partition: list[list[str]] | None
    parameters: list[str] | None
    witnesses: dict = field(default_factory=dict)
    note: str | None = None

    def to_json(self) -> dict:
        return asdict(self)


def classify(D: WeightedOrientedGraph, cap: int = DEFAULT_CAP) -> ClassificationReport:
    G = underlying(D)
    chordal, certificate = is_chordal(G)
    simp = simplicial_analysis(G)
    applicable = chordal or simp.is_simplicial_graph
    route = "chordal" if chordal else "simplicial" if simp.is_simplicial_graph else None

    unmixed, unmixed_witness = is_unmixed(D, cap)
    min_covers = minimal_vertex_covers(G, cap)
    height = min(c.bit_count() for c in min_covers)
    dimension = D.n - height
    partition, partition_witness = simplex_partition(G)

    witnesses = {"chordal" if chordal else "induced_cycle": certificate}
    if unmixed_witness:
        witnesses["mixed"] = unmixed_witness
    if partition_witness is not None:
        witnesses["simplex_partition_fails_at"] = partition_witness

    blocks = None if partition is None else [G.names(b) for b in partition.blocks]
    report = ClassificationReport(
        vertices=D.n,
        applicable=applicable,
        chordal=chordal,
        simplicial_graph=simp.is_simplicial_graph,
        route=route,
        edgeless=not D.arcs,
        unmixed=unmixed,
        cohen_macaulay=None,
        gorenstein=None,
        height=height,
        dimension=dimension,
        m=None if partition is None else partition.m,
        simplex_partition=blocks,
        parameters=None,
        witnesses=witnesses,
    )
    if not applicable:
        report.note = "underlying graph is neither chordal nor simplicial; run the oracle"
        return report

    graph_unmixed = len({c.bit_count() for c in min_covers}) == 1
    if graph_unmixed != (partition is not None):
        raise InvariantViolation(
            "simplex partition exists but minimal covers differ in size"
            if partition is not None
            else "minimal covers equal in size but no simplex partition"
        )
    report.cohen_macaulay = unmixed
    # isolated vertices are free variables and do not affect Gorensteinness
    report.gorenstein = G.is_matching_union()
    if unmixed:
        m = partition.m
        if dimension != m or any(c.bit_count() != D.n - m for c in min_covers):
            raise InvariantViolation(f"unmixed with m={m} but dimension={dimension}")
        report.parameters = [format_linear_form(b) for b in blocks]
    if report.gorenstein:
        if not unmixed:
            raise InvariantViolation("disjoint union of edges reported mixed")
        if len(edge_ideal(D)) != height:
            raise InvariantViolation("matching edge ideal is not a complete intersection")
    return report


def format_linear_form(names: list[str]) -> str:
    return "+".join(names)


def system_of_parameters(D: WeightedOrientedGraph, cap: int = DEFAULT_CAP) -> list[list[str]]:
    """Linear forms h_1..h_m, each the sum of one simplex block's vertices.

    Only defined when the underlying graph is chordal or simplicial and the
    edge ideal is unmixed; those are the hypotheses under which the forms are
    a regular sequence.
    """
    G = underlying(D)
    chordal, _ = is_chordal(G)
    if not (chordal or simplicial_analysis(G).is_simplicial_graph):
        raise NotApplicableError("underlying graph is neither chordal nor simplicial")
    unmixed, witness = is_unmixed(D, cap)
    if not unmixed:
        raise NotApplicableError(f"edge ideal is not unmixed: {witness}")
    partition, _ = simplex_partition(G)
    return [G.names(b) for b in partition.blocks]
