"""Immutable simple graphs on vertices 0..n-1, plus the small set of
traversal and subgraph helpers the rest of the package builds on."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with sorted adjacency lists.

    Build one with ``Graph(n, edges)``; duplicates in ``edges`` are merged,
    self-loops and out-of-range endpoints raise ``ValueError``.
    """

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()
    adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            canon.add(_canon(u, v))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in canon:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(canon))
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in nbrs))
        masks = []
        for a in nbrs:
            m = 0
            for w in a:
                m |= 1 << w
            masks.append(m)
        object.__setattr__(self, "masks", tuple(masks))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_forest(self) -> bool:
        return self.m == self.n - len(connected_components(self))

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and is_connected(self)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Subgraph:
    """An induced subgraph together with the map back to host vertex ids.

    ``to_host[i]`` is the host id of local vertex ``i``; ``to_local`` is the
    inverse for members only.
    """

    graph: Graph
    to_host: tuple[int, ...]

    @property
    def to_local(self) -> dict[int, int]:
        return {h: i for i, h in enumerate(self.to_host)}


def check_vertex_set(g: Graph, s: Iterable[int]) -> frozenset[int]:
    out = frozenset(int(v) for v in s)
    for v in out:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    return out


def mask_of(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def induced_subgraph(g: Graph, s: Iterable[int]) -> Subgraph:
    """Induced subgraph on ``s``; local ids follow ascending host ids."""
    keep = sorted(check_vertex_set(g, s))
    local = {h: i for i, h in enumerate(keep)}
    edges = [(local[u], local[v]) for u, v in g.edges if u in local and v in local]
    return Subgraph(Graph(len(keep), edges), tuple(keep))


def components_of_mask(g: Graph, mask: int) -> list[int]:
    """Connected components of g[mask] as bitmasks, ordered by minimum vertex."""
    out = []
    rest = mask
    masks = g.masks
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            new = masks[b.bit_length() - 1] & rest & ~comp
            comp |= new
            frontier |= new
        out.append(comp)
        rest &= ~comp
    return out


def connected_components(g: Graph, s: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Components of g (or of g[s]), ordered by smallest member."""
    mask = (1 << g.n) - 1 if s is None else mask_of(check_vertex_set(g, s))
    return [frozenset(members(c)) for c in components_of_mask(g, mask)]


def is_connected(g: Graph, s: Iterable[int] | None = None) -> bool:
    return len(connected_components(g, s)) <= 1


def neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Open neighbourhood of a vertex set: vertices outside s adjacent to s."""
    sm = mask_of(check_vertex_set(g, s))
    nb = 0
    for v in members(sm):
        nb |= g.masks[v]
    return frozenset(members(nb & ~sm))


def is_apex(g: Graph, a: int, h: Iterable[int]) -> bool:
    hs = check_vertex_set(g, h)
    if a in hs:
        raise ValueError(f"apex candidate {a} lies inside the subgraph")
    return all(g.has_edge(a, v) for v in hs)


def bfs_order(g: Graph, start: int) -> list[int]:
    seen = [False] * g.n
    seen[start] = True
    order = [start]
    q = deque([start])
    while q:
        v = q.popleft()
        for w in g.adj[v]:
            if not seen[w]:
                seen[w] = True
                order.append(w)
                q.append(w)
    return order


def is_bipartite(g: Graph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for w in g.adj[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    q.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def degeneracy(g: Graph) -> int:
    deg = [len(a) for a in g.adj]
    alive = [True] * g.n
    best = 0
    for _ in range(g.n):
        v = min((u for u in range(g.n) if alive[u]), key=lambda u: (deg[u], u))
        best = max(best, deg[v])
        alive[v] = False
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
    return best


@dataclass(frozen=True)
class Path:
    """A simple path in a host graph, validated on construction."""

    vertices: tuple[int, ...]

    def __init__(self, g: Graph, vertices: Iterable[int]):
        vs = tuple(int(v) for v in vertices)
        if not vs:
            raise ValueError("a path needs at least one vertex")
        check_vertex_set(g, vs)
        if len(set(vs)) != len(vs):
            raise ValueError("path repeats a vertex")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                raise ValueError(f"consecutive vertices {a}, {b} are not adjacent")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


# -- small named families, used by tests, generators and the CLI -------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and leaves 1..leaves."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
