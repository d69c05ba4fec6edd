"""Exact arithmetic on monomial ideals.

A monomial is a tuple of exponents aligned with the ideal's universe. An
ideal is kept as its unique minimal generating set, so ideal equality is
tuple equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .covers import (
    DEFAULT_CAP,
    CoverPartition,
    _strong,
    minimal_vertex_covers,
    strong_vertex_covers,
)
from .errors import InvariantViolation, NotStrongCoverError
from .graph_core import WeightedOrientedGraph, bits, underlying

Monomial = tuple  # exponents, one per universe variable

EXPONENT_LIMIT = 2**62


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _display_key(m: Monomial):
    # graded, then lexicographic with the first variable largest
    return (sum(m), tuple(-e for e in m))


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    kept = []
    for g in sorted(set(gens), key=_display_key):
        if not any(divides(k, g) for k in kept):
            kept.append(g)
    return tuple(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    universe: tuple[str, ...]
    generators: tuple[Monomial, ...]

    @classmethod
    def make(cls, universe: Sequence[str], gens: Iterable[Monomial]) -> "MonomialIdeal":
        universe = tuple(universe)
        gens = list(gens)
        for g in gens:
            if len(g) != len(universe):
                raise ValueError(f"monomial {g} does not match universe of size {len(universe)}")
            if any(e < 0 for e in g):
                raise ValueError(f"negative exponent in {g}")
            if any(e > EXPONENT_LIMIT for e in g):
                raise OverflowError(f"exponent too large in {g}")
        return cls(universe, minimalize(gens))

    def __len__(self):
        return len(self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.generators for e in g)

    def support(self) -> set[str]:
        return {self.universe[i] for g in self.generators for i, e in enumerate(g) if e}

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def monomial_str(self, m: Monomial) -> str:
        parts = []
        for v, e in zip(self.universe, m):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) or "1"

    def sparse(self, m: Monomial) -> dict[str, int]:
        return {v: e for v, e in zip(self.universe, m) if e}

    def to_json(self) -> list[dict[str, int]]:
        return [self.sparse(g) for g in self.generators]

    def __str__(self):
        return "<" + ", ".join(self.monomial_str(g) for g in self.generators) + ">"


def ideal_from_sparse(universe: Sequence[str], gens: Iterable[dict]) -> MonomialIdeal:
    pos = {v: i for i, v in enumerate(universe)}
    rows = []
    for g in gens:
        row = [0] * len(universe)
        for v, e in g.items():
            row[pos[v]] = e
        rows.append(tuple(row))
    return MonomialIdeal.make(universe, rows)


def edge_ideal(D: WeightedOrientedGraph) -> MonomialIdeal:
    """Generators x_i * x_j^w(x_j), one per arc x_i -> x_j."""
    gens = []
    for i, j in D.arcs:
        row = [0] * D.n
        row[i] = 1
        row[j] = D.weights[j]
        gens.append(tuple(row))
    return MonomialIdeal.make(D.vertices, gens)


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal.make(
        I.universe, (tuple(1 if e else 0 for e in g) for g in I.generators)
    )


def _intersect2(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.universe != b.universe:
        raise ValueError("ideals live over different universes")
    return MonomialIdeal.make(
        a.universe, (lcm(g, h) for g in a.generators for h in b.generators)
    )


def intersect(ideals: Sequence[MonomialIdeal]) -> MonomialIdeal:
    """Exact intersection by pairwise lcm of generators."""
    ideals = list(ideals)
    if not ideals:
        raise ValueError("cannot intersect an empty list of ideals")
    return reduce(_intersect2, ideals)


@dataclass(frozen=True)
class IrreducibleComponent:
    cover: CoverPartition
    ideal: MonomialIdeal


def irreducible_component(D: WeightedOrientedGraph, part: CoverPartition) -> IrreducibleComponent:
    """Q_C: variables of L1 together with x^w(x) for x in L2 and L3."""
    if not _strong(D, part):
        raise NotStrongCoverError(f"{D.names(part.cover)} is not a strong vertex cover")
    gens = []
    for x in bits(part.cover):
        row = [0] * D.n
        row[x] = 1 if part.l1 >> x & 1 else D.weights[x]
        gens.append(tuple(row))
    return IrreducibleComponent(part, MonomialIdeal.make(D.vertices, gens))


def primary_decomposition(
    D: WeightedOrientedGraph, cap: int = DEFAULT_CAP, verify: bool = False
) -> list[IrreducibleComponent]:
    """One irreducible component per strong vertex cover.

    With ``verify`` the lcm-intersection of the components is recomputed and
    compared against the edge ideal.
    """
    comps = [irreducible_component(D, p) for p in strong_vertex_covers(D, cap)]
    if verify:
        got = intersect([c.ideal for c in comps])
        if got != edge_ideal(D):
            raise InvariantViolation(
                f"intersection of components {got} differs from edge ideal {edge_ideal(D)}"
            )
    return comps


def redundant_components(comps: Sequence[IrreducibleComponent]) -> list[int]:
    """Indices of components whose removal leaves the intersection unchanged."""
    if len(comps) < 2:
        return []
    full = intersect([c.ideal for c in comps])
    out = []
    for k in range(len(comps)):
        rest = intersect([c.ideal for i, c in enumerate(comps) if i != k])
        if rest == full:
            out.append(k)
    return out


def is_unmixed(D: WeightedOrientedGraph, cap: int = DEFAULT_CAP) -> tuple[bool, dict | None]:
    """Unmixedness of the edge ideal, with a witness when it fails.

    Decided by: minimal covers of the underlying graph all of one size, and
    no strong cover with a non-empty L3. Cross-checked against "all strong
    covers have equal size" (associated primes are the strong covers).
    """
    strong = strong_vertex_covers(D, cap)
    minimal = minimal_vertex_covers(underlying(D), cap)

    witness = None
    for p in strong:
        if p.l3:
            witness = {
                "kind": "strong_cover_with_l3",
                "cover": D.names(p.cover),
                "l3": D.names(p.l3),
            }
            break
    if witness is None:
        sizes = {c.bit_count(): c for c in minimal}
        if len(sizes) > 1:
            lo, hi = min(sizes), max(sizes)
            witness = {
                "kind": "minimal_covers_of_different_size",
                "covers": [D.names(sizes[lo]), D.names(sizes[hi])],
            }
    verdict = witness is None

    by_size = len({p.size for p in strong}) <= 1
    if by_size != verdict:
        raise InvariantViolation(
            f"unmixedness routes disagree: L3 criterion {verdict}, equal-size criterion {by_size}"
        )
    return verdict, witness
