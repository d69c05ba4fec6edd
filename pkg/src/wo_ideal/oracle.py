"""Homological cross-check of the combinatorial verdicts.

Pipeline: edge ideal -> polarization (square-free) -> Stanley-Reisner
complex -> Reisner's criterion, with reduced homology computed exactly over
GF(2) and over the rationals. Nothing here consults covers of the original
graph, so it is independent of :mod:`wo_ideal.classification`.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Sequence

from .errors import BudgetExceeded, CapacityError
from .graph_core import WeightedOrientedGraph, bits
from .monomial_algebra import MonomialIdeal, edge_ideal

FIELDS = ("F2", "Q")
ORACLE_CAP = 16


@dataclass(frozen=True)
class PolarizedIdeal:
    ideal: MonomialIdeal
    variable_map: dict[str, list[str]]
    added_count: int


def polarize(I: MonomialIdeal) -> PolarizedIdeal:
    """Replace each x^e by the product of the first e copies of x.

    A variable that never appears with exponent > 1 keeps its name; otherwise
    its copies are named ``x#1 .. x#k``. Variables absent from every
    generator still get one copy so the ambient ring keeps its dimension.
    """
    n = len(I.universe)
    sizes = [1] * n
    for g in I.generators:
        for i, e in enumerate(g):
            sizes[i] = max(sizes[i], e)
    universe = []
    offsets = []
    variable_map = {}
    for v, k in zip(I.universe, sizes):
        offsets.append(len(universe))
        names = [v] if k == 1 else [f"{v}#{c}" for c in range(1, k + 1)]
        variable_map[v] = names
        universe.extend(names)
    gens = []
    for g in I.generators:
        row = [0] * len(universe)
        for i, e in enumerate(g):
            for c in range(e):
                row[offsets[i] + c] = 1
        gens.append(tuple(row))
    return PolarizedIdeal(MonomialIdeal.make(universe, gens), variable_map, len(universe) - n)


def depolarize(P: PolarizedIdeal, original_universe: Sequence[str]) -> MonomialIdeal:
    """Send every copy of x back to x; inverts :func:`polarize` on generators."""
    owner = {}
    for v, names in P.variable_map.items():
        for name in names:
            owner[name] = v
    pos = {v: i for i, v in enumerate(original_universe)}
    rows = []
    for g in P.ideal.generators:
        row = [0] * len(original_universe)
        for name, e in zip(P.ideal.universe, g):
            row[pos[owner[name]]] += e
        rows.append(tuple(row))
    return MonomialIdeal.make(original_universe, rows)


@dataclass(frozen=True)
class SimplicialComplex:
    universe: tuple[str, ...]
    facets: tuple[int, ...]  # vertex masks over universe

    @property
    def dimension(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1 if self.facets else -2

    @property
    def is_pure(self) -> bool:
        return len({f.bit_count() for f in self.facets}) <= 1

    def facet_names(self) -> list[list[str]]:
        return [[self.universe[i] for i in bits(f)] for f in self.facets]


def _facet_key(f: int):
    return (-f.bit_count(), list(bits(f)))


def _maximal(sets) -> tuple[int, ...]:
    kept = []
    for s in sorted(set(sets), key=lambda m: -m.bit_count()):
        if not any(s & k == s for k in kept):
            kept.append(s)
    return tuple(sorted(kept, key=_facet_key))


def minimal_transversals(edges: Sequence[int]) -> list[int]:
    """Inclusion-minimal sets meeting every edge (Berge's incremental method)."""
    current = [0]
    for e in sorted(set(edges), key=lambda m: m.bit_count()):
        nxt = set()
        for t in current:
            if t & e:
                nxt.add(t)
            else:
                for v in bits(e):
                    nxt.add(t | 1 << v)
        ordered = sorted(nxt, key=lambda m: m.bit_count())
        current = []
        for t in ordered:
            if not any(k & t == k for k in current):
                current.append(t)
    return current


def stanley_reisner(I: MonomialIdeal) -> SimplicialComplex:
    """Complex whose faces are the vertex sets containing no generator's support."""
    if not I.is_squarefree:
        raise ValueError("Stanley-Reisner complex needs a square-free ideal")
    full = (1 << len(I.universe)) - 1
    supports = [sum(1 << i for i, e in enumerate(g) if e) for g in I.generators]
    facets = [full & ~t for t in minimal_transversals(supports)]
    return SimplicialComplex(I.universe, _maximal(facets))


def faces_by_dimension(facets: Sequence[int]) -> list[list[int]]:
    """All faces grouped by size: entry k lists the faces with k vertices."""
    faces = set()
    for f in facets:
        s = f
        while True:
            faces.add(s)
            if s == 0:
                break
            s = (s - 1) & f
    top = max((f.bit_count() for f in facets), default=0)
    grouped = [[] for _ in range(top + 1)]
    for s in faces:
        grouped[s.bit_count()].append(s)
    for g in grouped:
        g.sort()
    return grouped


def boundary_matrices(facets: Sequence[int]) -> tuple[list[list[int]], list[list[dict[int, int]]]]:
    """Faces grouped by size and the signed boundary maps between them.

    ``maps[k]`` sends faces with k vertices to faces with k-1 vertices; each
    face becomes a sparse row ``{column: +-1}``. ``maps[0]`` is empty.
    """
    grouped = faces_by_dimension(facets)
    maps = [[]]
    for k in range(1, len(grouped)):
        col = {f: c for c, f in enumerate(grouped[k - 1])}
        rows = []
        for f in grouped[k]:
            row = {}
            for sign_pos, v in enumerate(bits(f)):
                row[col[f & ~(1 << v)]] = -1 if sign_pos % 2 else 1
            rows.append(row)
        maps.append(rows)
    return grouped, maps


def rank_f2(rows: Sequence[dict[int, int]]) -> int:
    pivots = {}
    for row in rows:
        r = 0
        for c, a in row.items():
            if a % 2:
                r |= 1 << c
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                break
    return len(pivots)


def rank_q(rows: Sequence[dict[int, int]]) -> int:
    """Rank over the rationals by fraction-free integer elimination."""
    pivots = {}
    for row in rows:
        r = {c: a for c, a in row.items() if a}
        while r:
            lead = max(r)
            if lead not in pivots:
                pivots[lead] = r
                break
            p = pivots[lead]
            a, b = p[lead], r[lead]
            out = {}
            for c in r.keys() | p.keys():
                val = a * r.get(c, 0) - b * p.get(c, 0)
                if val:
                    out[c] = val
            g = 0
            for val in out.values():
                g = gcd(g, val)
            if g > 1:
                out = {c: val // g for c, val in out.items()}
            r = out
    return len(pivots)


RANK = {"F2": rank_f2, "Q": rank_q}


@dataclass(frozen=True)
class HomologyProfile:
    field: str
    betti: tuple[int, ...]  # reduced Betti numbers for dimensions -1, 0, 1, ...
    face_counts: tuple[int, ...]  # f_{-1}, f_0, ...

    def reduced(self, dim: int) -> int:
        return self.betti[dim + 1] if 0 <= dim + 1 < len(self.betti) else 0

    @property
    def euler_from_faces(self) -> int:
        return sum((-1) ** (k - 1) * f for k, f in enumerate(self.face_counts))

    @property
    def euler_from_betti(self) -> int:
        return sum((-1) ** (k - 1) * b for k, b in enumerate(self.betti))


def _homology(facets: Sequence[int], field: str) -> HomologyProfile:
    grouped, maps = boundary_matrices(facets)
    rank = RANK[field]
    ranks = [rank(m) for m in maps] + [0]
    betti = tuple(len(grouped[k]) - ranks[k] - ranks[k + 1] for k in range(len(grouped)))
    return HomologyProfile(field, betti, tuple(len(g) for g in grouped))


def reduced_homology_ranks(
    complex_: SimplicialComplex, field: str, cap: int = ORACLE_CAP
) -> HomologyProfile:
    if field not in RANK:
        raise ValueError(f"unknown field {field!r}; expected one of {FIELDS}")
    if len(complex_.universe) > cap:
        raise CapacityError(f"{len(complex_.universe)} vertices exceeds the oracle cap of {cap}")
    return _homology(complex_.facets, field)


def link(facets: Sequence[int], face: int) -> tuple[int, ...]:
    return _maximal(f & ~face for f in facets if f & face == face)


def _apex(facets) -> int:
    common = -1
    for f in facets:
        common &= f
    return common if facets else 0


def contract(facets: Sequence[int]) -> tuple[int, ...]:
    """Delete vertices whose link is a cone until none is left.

    Such a link is contractible, so each deletion is a homotopy equivalence
    and reduced homology over any field is unchanged.
    """
    facets = _maximal(facets)
    changed = True
    while changed:
        changed = False
        vertices = 0
        for f in facets:
            vertices |= f
        for v in bits(vertices):
            bit = 1 << v
            star = [f & ~bit for f in facets if f & bit]
            if _apex(star):
                facets = _maximal([f for f in facets if not f & bit] + star)
                changed = True
                break
    return facets


class _Reisner:
    def __init__(self, field, memo=None, deadline=None):
        self.rank = RANK[field]
        self.field = field
        self.memo = {} if memo is None else memo
        self.deadline = deadline

    def __call__(self, facets: tuple[int, ...]) -> bool:
        key = frozenset(facets)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("oracle budget exhausted", partial={"links_checked": len(self.memo)})
        verdict = self._check(facets)
        self.memo[key] = verdict
        return verdict

    def _check(self, facets):
        sizes = {f.bit_count() for f in facets}
        if len(sizes) != 1:
            return False
        apex = _apex(facets)
        if apex:
            # a cone is Cohen-Macaulay exactly when its base is
            return self(tuple(f & ~apex for f in facets))
        d = sizes.pop() - 1
        if d <= 0:
            return True
        grouped, maps = boundary_matrices(contract(facets))
        ranks = [self.rank(m) for m in maps] + [0]
        for k in range(min(d + 1, len(grouped))):  # faces of dimension k-1 < d
            if len(grouped[k]) - ranks[k] - ranks[k + 1]:
                return False
        vertices = 0
        for f in facets:
            vertices |= f
        return all(self(link(facets, 1 << v)) for v in bits(vertices))


def is_cm_reisner(
    complex_: SimplicialComplex,
    field: str,
    cap: int = ORACLE_CAP,
    memo: dict | None = None,
    deadline: float | None = None,
) -> bool:
    """Reisner's criterion: every link has no reduced homology below its top dimension.

    Checked recursively as: the complex is pure, its own homology vanishes
    below the top, and every vertex link is Cohen-Macaulay. ``memo`` may be
    shared between calls with the same ``field``.
    """
    if field not in RANK:
        raise ValueError(f"unknown field {field!r}; expected one of {FIELDS}")
    if len(complex_.universe) > cap:
        raise CapacityError(f"{len(complex_.universe)} vertices exceeds the oracle cap of {cap}")
    if not complex_.facets:
        raise ValueError("void complex (unit ideal) has no Cohen-Macaulay verdict")
    return _Reisner(field, memo, deadline)(complex_.facets)


@dataclass
class OracleReport:
    polarized_variables: int
    added_count: int
    facets: int
    pure: bool
    complex_dimension: int
    derived_dimension: int
    cohen_macaulay: dict[str, bool]
    fields_agree: bool
    seconds: float
    mismatches: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def oracle_verify(
    D: WeightedOrientedGraph,
    fields: Sequence[str] = FIELDS,
    cap: int = ORACLE_CAP,
    force: bool = False,
    budget: float | None = None,
    classification=None,
    memos: dict | None = None,
) -> OracleReport:
    """Decide Cohen-Macaulayness of ``D``'s edge ideal homologically.

    If ``classification`` (a ClassificationReport) is given, its unmixed,
    dimension, and Cohen-Macaulay fields are compared against the oracle and
    any disagreement is listed in ``mismatches``.
    """
    start = time.monotonic()
    pol = polarize(edge_ideal(D))
    nvars = len(pol.ideal.universe)
    if nvars > cap and not force:
        raise CapacityError(
            f"polarization has {nvars} variables, above the oracle cap of {cap}; use force"
        )
    deadline = None if budget is None else start + budget
    complex_ = stanley_reisner(pol.ideal)
    verdicts = {}
    for f in fields:
        memo = None if memos is None else memos.setdefault(f, {})
        try:
            verdicts[f] = is_cm_reisner(complex_, f, cap=max(cap, nvars), memo=memo, deadline=deadline)
        except BudgetExceeded as exc:
            exc.partial = {
                "polarized_variables": nvars,
                "facets": len(complex_.facets),
                "complex_dimension": complex_.dimension,
                "cohen_macaulay": verdicts,
                "field_interrupted": f,
                **(exc.partial or {}),
            }
            raise
    report = OracleReport(
        polarized_variables=nvars,
        added_count=pol.added_count,
        facets=len(complex_.facets),
        pure=complex_.is_pure,
        complex_dimension=complex_.dimension,
        derived_dimension=complex_.dimension + 1 - pol.added_count,
        cohen_macaulay=verdicts,
        fields_agree=len(set(verdicts.values())) <= 1,
        seconds=round(time.monotonic() - start, 6),
    )
    if not report.fields_agree:
        report.mismatches.append(f"fields disagree: {verdicts}")
    if classification is not None:
        if report.pure != classification.unmixed:
            report.mismatches.append(
                f"purity {report.pure} vs unmixed {classification.unmixed}"
            )
        if report.derived_dimension != classification.dimension:
            report.mismatches.append(
                f"dimension {report.derived_dimension} vs {classification.dimension}"
            )
        if classification.cohen_macaulay is not None:
            for f, v in verdicts.items():
                if v != classification.cohen_macaulay:
                    report.mismatches.append(
                        f"{f} verdict {v} vs classification {classification.cohen_macaulay}"
                    )
    return report
