"""Finite simple graphs: domination polynomials, chordality, products.

Graphs are kept deliberately small-scale: adjacency is a tuple of int
bitmasks and the subset enumerations are guarded.  The connected
domination polynomial counts, for every cardinality, the vertex subsets
that dominate the graph and induce a connected subgraph.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotConnectedError, SizeGuardExceeded

__all__ = [
    "Graph",
    "Polynomial",
    "ChordalityCertificate",
    "one_skeleton",
    "is_connected_dominating",
    "connected_domination_polynomial",
    "is_chordal",
    "is_triangle_free",
    "cartesian_product",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "grid_graph",
    "random_connected_graph",
    "random_chordal_graph",
    "graph_to_json",
    "graph_from_json",
]


class Graph:
    """A simple undirected graph on vertices 0..vertex_count-1."""

    __slots__ = ("vertex_count", "edges", "adjacency")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        self.vertex_count = vertex_count
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            canon.add((min(u, v), max(u, v)))
        self.edges = frozenset(canon)
        adj = [0] * vertex_count
        for u, v in canon:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adjacency = tuple(adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adjacency[v])

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_connected(self) -> bool:
        m = self.vertex_count
        if m == 0:
            return False
        return _component_mask(self.adjacency, 0, (1 << m) - 1) == (1 << m) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"Graph(m={self.vertex_count}, e={self.edge_count})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _component_mask(adjacency: Sequence[int], start: int, within: int) -> int:
    """Bitmask of the component of ``start`` inside the induced subgraph ``within``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        grown = 0
        for v in _bits(frontier):
            grown |= adjacency[v] & within
        frontier = grown & ~seen
        seen |= frontier
    return seen


def one_skeleton(X) -> Graph:
    """The graph of vertices and edges of a simplicial complex."""
    return Graph(X.vertex_count, list(X.simplices_of_dim(1)))


@dataclass(frozen=True)
class Polynomial:
    """A polynomial with integer coefficients, index = degree."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        c = self.coefficients
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coefficients", tuple(int(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for d, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if d == 0:
                parts.append(str(c))
            else:
                base = "t" if d == 1 else f"t^{d}"
                parts.append(base if c == 1 else f"{c}{base}")
        return " + ".join(parts)


def is_connected_dominating(G: Graph, subset: Iterable[int]) -> bool:
    """Whether the subset dominates G and induces a connected subgraph."""
    mask = 0
    for v in subset:
        if not (0 <= v < G.vertex_count):
            raise ValueError(f"vertex {v} out of range")
        mask |= 1 << v
    if mask == 0:
        return False
    full = (1 << G.vertex_count) - 1
    dominated = mask
    for v in _bits(mask):
        dominated |= G.adjacency[v]
    if dominated != full:
        return False
    start = (mask & -mask).bit_length() - 1
    return _component_mask(G.adjacency, start, mask) == mask


def connected_domination_polynomial(
    G: Graph, max_vertices: int = 24, prune: bool = False
) -> Polynomial:
    """Count connected dominating sets of each size.

    Monic of degree |V| for connected graphs.  With ``prune=True`` a
    branch-and-bound recursion replaces the plain subset counter; the two
    paths return identical polynomials.
    """
    m = G.vertex_count
    if m > max_vertices:
        raise SizeGuardExceeded(f"{m} vertices exceeds the guard of {max_vertices}")
    if not G.is_connected:
        raise NotConnectedError("the connected domination polynomial needs a connected graph")
    full = (1 << m) - 1
    closed = [G.adjacency[v] | (1 << v) for v in range(m)]
    counts = [0] * (m + 1)
    if prune:
        _cdp_prune(G.adjacency, closed, full, m, 0, 0, 0, counts)
    else:
        for mask in range(1, 1 << m):
            dominated = 0
            rest = mask
            while rest:
                low = rest & -rest
                dominated |= closed[low.bit_length() - 1]
                rest ^= low
            if dominated != full:
                continue
            start = (mask & -mask).bit_length() - 1
            if _component_mask(G.adjacency, start, mask) == mask:
                counts[mask.bit_count()] += 1
    return Polynomial(tuple(counts))


def _cdp_prune(adjacency, closed, full, m, v, mask, dominated, counts) -> None:
    if v == m:
        if mask and dominated == full:
            start = (mask & -mask).bit_length() - 1
            if _component_mask(adjacency, start, mask) == mask:
                counts[mask.bit_count()] += 1
        return
    # even taking every remaining vertex cannot dominate: cut the branch
    potential = dominated
    for w in range(v, m):
        potential |= closed[w]
    if potential != full:
        return
    _cdp_prune(adjacency, closed, full, m, v + 1, mask | (1 << v), dominated | closed[v], counts)
    _cdp_prune(adjacency, closed, full, m, v + 1, mask, dominated, counts)


# --------------------------------------------------------------------------
# Chordality


@dataclass(frozen=True)
class ChordalityCertificate:
    """Outcome of a chordality test with a checkable witness.

    ``elimination_order`` is a perfect elimination order when chordal;
    ``chordless_cycle`` is an induced cycle of length >= 4 when not.
    """

    chordal: bool
    elimination_order: tuple[int, ...] | None = None
    chordless_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.chordal


def _lex_bfs(G: Graph) -> list[int]:
    partitions: list[list[int]] = [list(range(G.vertex_count))]
    order: list[int] = []
    while partitions:
        head = partitions[0]
        v = head.pop(0)
        if not head:
            partitions.pop(0)
        order.append(v)
        refined: list[list[int]] = []
        for cls in partitions:
            hit = [x for x in cls if G.has_edge(v, x)]
            miss = [x for x in cls if not G.has_edge(v, x)]
            if hit:
                refined.append(hit)
            if miss:
                refined.append(miss)
        partitions = refined
    return order


def _find_chordless_cycle(G: Graph, v: int, u: int, w: int) -> tuple[int, ...] | None:
    """A chordless cycle through v given non-adjacent neighbours u, w of v."""
    banned = G.adjacency[v] | (1 << v)
    allowed = ((1 << G.vertex_count) - 1) & ~banned | (1 << u) | (1 << w)
    # BFS from u to w inside the allowed set; a shortest path there has no
    # chords, so closing it up through v gives an induced cycle
    prev = {u: None}
    queue = [u]
    while queue:
        nxt = []
        for x in queue:
            for y in _bits(G.adjacency[x] & allowed):
                if y not in prev:
                    prev[y] = x
                    nxt.append(y)
        if w in prev:
            break
        queue = nxt
    if w not in prev:
        return None
    path = []
    cur: int | None = w
    while cur is not None:
        path.append(cur)
        cur = prev[cur]
    return (v, *reversed(path))


def _chordless_cycle_by_search(G: Graph) -> tuple[int, ...] | None:
    """Exhaustive fallback: scan vertex subsets for an induced cycle."""
    import itertools

    m = G.vertex_count
    for k in range(4, m + 1):
        for subset in itertools.combinations(range(m), k):
            inside = 0
            for v in subset:
                inside |= 1 << v
            if any((G.adjacency[v] & inside).bit_count() != 2 for v in subset):
                continue
            if _component_mask(G.adjacency, subset[0], inside) != inside:
                continue
            cycle = [subset[0]]
            prev = -1
            while len(cycle) < k:
                nbrs = [x for x in _bits(G.adjacency[cycle[-1]] & inside) if x != prev]
                prev = cycle[-1]
                cycle.append(nbrs[0])
            return tuple(cycle)
    return None


def is_chordal(G: Graph) -> ChordalityCertificate:
    """Chordality via lexicographic BFS, with a checkable witness either way.

    The reverse of a lex-BFS order is a perfect elimination order exactly
    when the graph is chordal; on failure a chordless cycle of length at
    least four is extracted.
    """
    m = G.vertex_count
    order = _lex_bfs(G)
    position = {v: i for i, v in enumerate(order)}
    elimination = tuple(reversed(order))
    elim_pos = {v: i for i, v in enumerate(elimination)}
    for v in elimination:
        later = [w for w in G.neighbors(v) if elim_pos[w] > elim_pos[v]]
        for i in range(len(later)):
            for j in range(i + 1, len(later)):
                u, w = later[i], later[j]
                if not G.has_edge(u, w):
                    cycle = _find_chordless_cycle(G, v, u, w)
                    if cycle is None:
                        cycle = _chordless_cycle_by_search(G)
                    return ChordalityCertificate(False, chordless_cycle=cycle)
    return ChordalityCertificate(True, elimination_order=elimination)


def is_triangle_free(G: Graph) -> bool:
    for u, v in G.edges:
        if G.adjacency[u] & G.adjacency[v]:
            return False
    return True


# --------------------------------------------------------------------------
# Constructions


def cartesian_product(G: Graph, H: Graph) -> Graph:
    """Cartesian product; vertex (g, h) gets index g * H.vertex_count + h."""
    hm = H.vertex_count
    edges = []
    for u, v in G.edges:
        for h in range(hm):
            edges.append((u * hm + h, v * hm + h))
    for u, v in H.edges:
        for g in range(G.vertex_count):
            edges.append((g * hm + u, g * hm + v))
    return Graph(G.vertex_count * hm, edges)


def path_graph(m: int) -> Graph:
    return Graph(m, [(i, i + 1) for i in range(m - 1)])


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise ValueError("a cycle needs at least three vertices")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


def complete_graph(m: int) -> Graph:
    return Graph(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def grid_graph(rows: int, cols: int) -> Graph:
    return cartesian_product(path_graph(rows), path_graph(cols))


def random_connected_graph(m: int, edge_probability: float, seed: int, max_attempts: int = 2000) -> Graph:
    """A seeded Erdos-Renyi draw, retried until connected."""
    rng = random.Random(seed)
    for _ in range(max_attempts):
        edges = [
            (i, j)
            for i in range(m)
            for j in range(i + 1, m)
            if rng.random() < edge_probability
        ]
        G = Graph(m, edges)
        if G.is_connected:
            return G
    raise RuntimeError(f"no connected graph found for seed {seed}")


def random_chordal_graph(m: int, seed: int) -> Graph:
    """A seeded connected chordal graph grown by simplicial vertices.

    Each new vertex is joined to a clique of the current graph, so every
    intermediate graph is chordal and connected.
    """
    if m < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    adj: list[set[int]] = [set()]
    for v in range(1, m):
        anchor = rng.randrange(v)
        clique = [anchor]
        candidates = set(adj[anchor])
        while candidates and rng.random() < 0.6:
            w = rng.choice(sorted(candidates))
            clique.append(w)
            candidates &= adj[w]
        adj.append(set())
        for w in clique:
            edges.append((w, v))
            adj[v].add(w)
            adj[w].add(v)
    return Graph(m, edges)


# --------------------------------------------------------------------------
# JSON wire format


def graph_to_json(G: Graph) -> str:
    return json.dumps(
        {"vertex_count": G.vertex_count, "edges": [list(e) for e in sorted(G.edges)]},
        sort_keys=True,
    )


def graph_from_json(text: str) -> Graph:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "vertex_count" not in doc or "edges" not in doc:
        raise ValueError("graph JSON needs 'vertex_count' and 'edges'")
    return Graph(int(doc["vertex_count"]), [tuple(e) for e in doc["edges"]])