"""Shared hypothesis strategies and brute-force oracles.

The oracles deliberately avoid the package's own search code: they enumerate
paths with networkx and subsets by bitmask, so they can catch bugs in the
pruned searches they are compared against.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, product

import networkx as nx
from hypothesis import strategies as st

from lincolor.graph import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8, connected: bool = False) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    edges = [e for e in pairs if draw(st.booleans())] if pairs else []
    if connected:
        # a random spanning tree keeps everything in one piece
        for v in range(1, n):
            edges.append((draw(st.integers(0, v - 1)), v))
    return Graph(n, edges)


@st.composite
def colored_graphs(draw, max_n: int = 8, max_colors: int = 4, connected: bool = False):
    g = draw(graphs(max_n=max_n, connected=connected))
    k = draw(st.integers(1, max_colors))
    colors = draw(st.lists(st.integers(1, k), min_size=g.n, max_size=g.n))
    return g, colors


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.sorted_edges())
    return h


def has_center(colors, vertices) -> bool:
    counts = Counter(colors[v] for v in vertices)
    return any(k == 1 for k in counts.values())


def all_paths(g: Graph):
    h = to_nx(g)
    for v in range(g.n):
        yield [v]
    for s, t in combinations(range(g.n), 2):
        yield from nx.all_simple_paths(h, s, t)


def brute_is_linear(g: Graph, colors) -> bool:
    return all(has_center(colors, p) for p in all_paths(g))


def connected_subsets(g: Graph):
    h = to_nx(g)
    for mask in range(1, 1 << g.n):
        vs = [v for v in range(g.n) if mask >> v & 1]
        if nx.is_connected(h.subgraph(vs)):
            yield vs


def brute_is_centered(g: Graph, colors) -> bool:
    return all(has_center(colors, vs) for vs in connected_subsets(g))


def brute_treedepth(g: Graph) -> int:
    h = to_nx(g)

    @lru_cache(maxsize=None)
    def td(vs: frozenset) -> int:
        if not vs:
            return 0
        comps = list(nx.connected_components(h.subgraph(vs)))
        if len(comps) > 1:
            return max(td(frozenset(c)) for c in comps)
        return 1 + min(td(vs - {v}) for v in vs)

    return td(frozenset(range(g.n)))


def brute_chi_lin(g: Graph) -> int:
    for k in range(1, g.n + 1):
        for colors in product(range(1, k + 1), repeat=g.n):
            if brute_is_linear(g, colors):
                return k
    return 0
