"""Weighted oriented graphs and the graph-theoretic questions asked of them.

Vertices are opaque string names, but every algorithm here works on their
positions in the input order; vertex sets are stored as int bitmasks over
that order so that set-valued results come out sorted for free.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InvalidGraphError


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]  # (i, j) with i < j, sorted

    def __post_init__(self):
        n = len(self.vertices)
        adj = [0] * n
        for i, j in self.edges:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise InvalidGraphError(f"bad edge {(i, j)}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: Iterable[tuple[int, int]]):
        norm = sorted({(min(e), max(e)) for e in edges})
        return cls(tuple(vertices), tuple(norm))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def names(self, mask: int) -> list[str]:
        return [self.vertices[i] for i in bits(mask)]

    def closed_nbhd(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def is_clique(self, mask: int) -> bool:
        return all((self.adj[v] | (1 << v)) & mask == mask for v in bits(mask))

    def is_independent(self, mask: int) -> bool:
        return all(self.adj[v] & mask == 0 for v in bits(mask))

    def is_cover(self, mask: int) -> bool:
        return all((mask >> i) & 1 or (mask >> j) & 1 for i, j in self.edges)

    def components(self) -> list[int]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_matching_union(self) -> bool:
        """True when every non-isolated component is a single edge."""
        return all(self.adj[v].bit_count() <= 1 for v in range(self.n))

    def induced(self, mask: int) -> "SimpleGraph":
        idx = list(bits(mask))
        pos = {v: k for k, v in enumerate(idx)}
        edges = [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        return SimpleGraph.from_edges([self.vertices[i] for i in idx], edges)


@dataclass(frozen=True)
class WeightedOrientedGraph:
    """A directed graph with a positive integer weight on every vertex.

    ``arcs`` holds index pairs ``(i, j)`` meaning ``vertices[i] -> vertices[j]``.
    Use :func:`build_graph` rather than the constructor for validation.
    """

    vertices: tuple[str, ...]
    weights: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InvalidGraphError(f"unknown vertex {name!r}") from None

    def weight(self, name: str) -> int:
        return self.weights[self.index(name)]

    @cached_property
    def out_mask(self) -> tuple[int, ...]:
        out = [0] * self.n
        for i, j in self.arcs:
            out[i] |= 1 << j
        return tuple(out)

    @cached_property
    def in_mask(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for i, j in self.arcs:
            inn[j] |= 1 << i
        return tuple(inn)

    @cached_property
    def heavy_mask(self) -> int:
        """Vertices with weight != 1."""
        return mask_of(i for i, w in enumerate(self.weights) if w != 1)

    def names(self, mask: int) -> list[str]:
        return [self.vertices[i] for i in bits(mask)]

    def mask(self, names: Iterable[str]) -> int:
        return mask_of(self.index(v) for v in names)

    def arc_names(self) -> list[tuple[str, str]]:
        return [(self.vertices[i], self.vertices[j]) for i, j in self.arcs]

    def relabel(self, perm: Sequence[int]) -> "WeightedOrientedGraph":
        """Graph with vertex ``i`` moved to position ``perm[i]`` (names travel along)."""
        n = self.n
        verts = [None] * n
        weights = [0] * n
        for i in range(n):
            verts[perm[i]] = self.vertices[i]
            weights[perm[i]] = self.weights[i]
        arcs = sorted((perm[i], perm[j]) for i, j in self.arcs)
        return WeightedOrientedGraph(tuple(verts), tuple(weights), tuple(arcs))


def build_graph(
    vertex_list: Sequence[str],
    weight_map: Mapping[str, int] | None,
    arc_list: Iterable[Sequence[str]],
) -> WeightedOrientedGraph:
    """Validate and build a :class:`WeightedOrientedGraph`.

    Missing weights default to 1. Rejects loops, repeated or antiparallel
    arcs, weights below 1, and in-degree-0 vertices carrying a weight > 1
    (such weights never reach the edge ideal).
    """
    vertices = tuple(vertex_list)
    index = {}
    for v in vertices:
        if not isinstance(v, str) or not v:
            raise InvalidGraphError(f"vertex names must be non-empty strings, got {v!r}")
        if v in index:
            raise InvalidGraphError(f"duplicate vertex {v!r}")
        index[v] = len(index)
    weight_map = dict(weight_map or {})
    for v in weight_map:
        if v not in index:
            raise InvalidGraphError(f"weight given for unknown vertex {v!r}")
    weights = []
    for v in vertices:
        w = weight_map.get(v, 1)
        if isinstance(w, bool) or not isinstance(w, int):
            raise InvalidGraphError(f"weight of {v!r} must be an integer, got {w!r}")
        if w < 1:
            raise InvalidGraphError(f"weight of {v!r} must be >= 1, got {w}")
        weights.append(w)

    arcs = set()
    for arc in arc_list:
        if len(arc) != 2:
            raise InvalidGraphError(f"arc must be a pair, got {arc!r}")
        a, b = arc
        for v in (a, b):
            if v not in index:
                raise InvalidGraphError(f"arc {a!r}->{b!r} references unknown vertex {v!r}")
        i, j = index[a], index[b]
        if i == j:
            raise InvalidGraphError(f"loop arc at {a!r}")
        if (i, j) in arcs:
            raise InvalidGraphError(f"duplicate arc {a!r}->{b!r}")
        if (j, i) in arcs:
            raise InvalidGraphError(f"antiparallel arcs between {a!r} and {b!r}")
        arcs.add((i, j))

    has_in = {j for _, j in arcs}
    for i, v in enumerate(vertices):
        if i not in has_in and weights[i] > 1:
            raise InvalidGraphError(
                f"vertex {v!r} has no in-arcs but weight {weights[i]}; sources must have weight 1"
            )
    return WeightedOrientedGraph(vertices, tuple(weights), tuple(sorted(arcs)))


def underlying(D: WeightedOrientedGraph) -> SimpleGraph:
    return SimpleGraph.from_edges(D.vertices, D.arcs)


def mcs_order(G: SimpleGraph) -> list[int]:
    """Maximum cardinality search visit order; ties go to the earliest vertex."""
    n = G.n
    label = [0] * n
    unvisited = G.full_mask
    order = []
    for _ in range(n):
        best = max(bits(unvisited), key=lambda v: (label[v], -v))
        order.append(best)
        unvisited &= ~(1 << best)
        for u in bits(G.adj[best] & unvisited):
            label[u] += 1
    return order


def is_perfect_elimination(G: SimpleGraph, order: Sequence[int]) -> bool:
    later = G.full_mask
    for v in order:
        later &= ~(1 << v)
        if not G.is_clique(G.adj[v] & later):
            return False
    return True


def _induced_long_cycle(G: SimpleGraph) -> list[int] | None:
    # v with non-adjacent neighbours a, b joined by a path avoiding the rest of N[v]
    for v in range(G.n):
        nb = list(bits(G.adj[v]))
        for x, a in enumerate(nb):
            for b in nb[x + 1:]:
                if G.adj[a] >> b & 1:
                    continue
                blocked = G.closed_nbhd(v) & ~((1 << a) | (1 << b))
                prev = {a: None}
                queue = deque([a])
                while queue:
                    u = queue.popleft()
                    if u == b:
                        break
                    for t in bits(G.adj[u] & ~blocked):
                        if t not in prev:
                            prev[t] = u
                            queue.append(t)
                if b in prev:
                    path = []
                    u = b
                    while u is not None:
                        path.append(u)
                        u = prev[u]
                    return [v] + path[::-1]
    return None


def is_chordal(G: SimpleGraph) -> tuple[bool, list[str]]:
    """Decide chordality with a certificate.

    Returns ``(True, peo)`` with a verified perfect elimination ordering, or
    ``(False, cycle)`` with the vertices of an induced cycle of length > 3.
    """
    peo = mcs_order(G)[::-1]
    if is_perfect_elimination(G, peo):
        return True, [G.vertices[v] for v in peo]
    cycle = _induced_long_cycle(G)
    assert cycle is not None and len(cycle) > 3
    return False, [G.vertices[v] for v in cycle]


@dataclass(frozen=True)
class SimplicialAnalysis:
    simplicial: int  # mask
    simplices: tuple[int, ...]  # masks, sorted by lowest vertex
    is_simplicial_graph: bool


def simplicial_analysis(G: SimpleGraph) -> SimplicialAnalysis:
    simp = 0
    simplices = set()
    for v in range(G.n):
        nb = G.closed_nbhd(v)
        if G.is_clique(nb):
            simp |= 1 << v
            simplices.add(nb)
    touched = simp
    for v in bits(simp):
        touched |= G.adj[v]
    ordered = tuple(sorted(simplices, key=lambda m: (m & -m).bit_length()))
    return SimplicialAnalysis(simp, ordered, touched == G.full_mask)


@dataclass(frozen=True)
class SimplexPartition:
    blocks: tuple[int, ...]  # vertex masks H_1..H_m

    @property
    def m(self) -> int:
        return len(self.blocks)


def simplex_partition(G: SimpleGraph) -> tuple[SimplexPartition | None, str | None]:
    """Partition V(G) into simplices, if every vertex lies in exactly one.

    Returns ``(partition, None)`` on success, otherwise ``(None, witness)``
    naming a vertex lying in zero or several simplices.
    """
    simplices = simplicial_analysis(G).simplices
    for v in range(G.n):
        count = sum(1 for s in simplices if s >> v & 1)
        if count != 1:
            return None, G.vertices[v]
    return SimplexPartition(simplices), None
