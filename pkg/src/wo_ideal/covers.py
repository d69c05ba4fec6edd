"""Minimal and strong vertex covers and their L1/L2/L3 split."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, NotACoverError
from .graph_core import SimpleGraph, WeightedOrientedGraph, bits, underlying

DEFAULT_CAP = 24


@dataclass(frozen=True)
class CoverPartition:
    """A vertex cover with its members split by where their arcs point.

    ``l1``: members with an out-arc leaving the cover.
    ``l2``: remaining members with an in-arc from outside.
    ``l3``: members whose whole neighbourhood lies in the cover.
    """

    cover: int
    l1: int
    l2: int
    l3: int

    @property
    def size(self) -> int:
        return self.cover.bit_count()

    @property
    def is_minimal(self) -> bool:
        # C - {x} is still a cover exactly when N(x) is inside C
        return self.l3 == 0


def cover_order_key(mask: int):
    return (mask.bit_count(), list(bits(mask)))


def _check_cap(n: int, cap: int):
    if n > cap:
        raise CapacityError(f"{n} vertices exceeds the exact-mode cap of {cap}")


def minimal_vertex_covers(G: SimpleGraph, cap: int = DEFAULT_CAP) -> list[int]:
    """All inclusion-minimal vertex covers, as masks sorted by (size, lex).

    Each is the complement of a maximal independent set; those are the
    maximal cliques of the complement graph, found by Bron-Kerbosch with
    pivoting.
    """
    _check_cap(G.n, cap)
    full = G.full_mask
    non_adj = [full & ~G.adj[v] & ~(1 << v) for v in range(G.n)]
    found = []

    def expand(r, p, x):
        if not p and not x:
            found.append(r)
            return
        pivot = max(bits(p | x), key=lambda u: (non_adj[u] & p).bit_count())
        for v in bits(p & ~non_adj[pivot]):
            expand(r | 1 << v, p & non_adj[v], x & non_adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, full, 0)
    return sorted((full & ~s for s in found), key=cover_order_key)


def cover_partition(D: WeightedOrientedGraph, cover: int) -> CoverPartition:
    """Split ``cover`` (a vertex mask) into L1, L2, L3 using the arcs of ``D``."""
    outside = ((1 << D.n) - 1) & ~cover
    for i, j in D.arcs:
        if not (cover >> i & 1 or cover >> j & 1):
            raise NotACoverError(
                f"{D.names(cover)} misses the edge {D.vertices[i]}-{D.vertices[j]}"
            )
    out, inn = D.out_mask, D.in_mask
    l1 = l2 = 0
    for x in bits(cover):
        if out[x] & outside:
            l1 |= 1 << x
        elif inn[x] & outside:
            l2 |= 1 << x
    return CoverPartition(cover, l1, l2, cover & ~(l1 | l2))


def _strong(D: WeightedOrientedGraph, part: CoverPartition) -> bool:
    sources = (part.l2 | part.l3) & D.heavy_mask
    inn = D.in_mask
    return all(inn[x] & sources for x in bits(part.l3))


def is_strong_cover(D: WeightedOrientedGraph, cover: int) -> bool:
    """True iff ``cover`` is minimal, or every L3 member has an in-arc from a
    weight != 1 vertex of L2 or L3."""
    return _strong(D, cover_partition(D, cover))


def _independent_sets(G: SimpleGraph, reverse: bool = False):
    order = list(range(G.n))
    if reverse:
        order.reverse()

    def rec(k, chosen, banned):
        if k == len(order):
            yield chosen
            return
        v = order[k]
        yield from rec(k + 1, chosen, banned)
        if not banned >> v & 1:
            yield from rec(k + 1, chosen | 1 << v, banned | G.adj[v])

    yield from rec(0, 0, 0)


def strong_vertex_covers(
    D: WeightedOrientedGraph, cap: int = DEFAULT_CAP, reverse: bool = False
) -> list[CoverPartition]:
    """Every strong vertex cover of ``D`` with its partition, sorted by (size, lex).

    Exhaustive over complements of independent sets; ``reverse`` only flips
    the search order and must not change the result.
    """
    _check_cap(D.n, cap)
    G = underlying(D)
    full = G.full_mask
    result = []
    for ind in _independent_sets(G, reverse):
        part = cover_partition(D, full & ~ind)
        if _strong(D, part):
            result.append(part)
    result.sort(key=lambda p: cover_order_key(p.cover))
    return result
