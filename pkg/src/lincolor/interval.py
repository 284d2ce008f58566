"""Interval graphs: consecutive maximal-clique orderings, prevailing paths
and subgraphs, and the recursive conversion of a linear coloring into a
treedepth decomposition of depth at most k^2."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .colorings import Coloring, verify_linear
from .errors import BudgetExceeded, NotCentered, NotLinear
from .graph import Graph, Path, connected_components, induced_subgraph, is_connected, neighborhood
from .treedepth import TreedepthDecomposition, canonical_coloring, canonical_decomposition, check_valid


@dataclass(frozen=True)
class IntervalRepresentation:
    intervals: tuple[tuple[int, int], ...]

    def __init__(self, intervals: Iterable[Sequence[int]]):
        ivs = tuple((int(a), int(b)) for a, b in intervals)
        for v, (a, b) in enumerate(ivs):
            if a > b:
                raise ValueError(f"interval of vertex {v} is empty: [{a}, {b}]")
        object.__setattr__(self, "intervals", ivs)

    @property
    def n(self) -> int:
        return len(self.intervals)

    def graph(self) -> Graph:
        ivs = self.intervals
        order = sorted(range(self.n), key=lambda v: ivs[v])
        edges = []
        active: list[int] = []
        for v in order:
            lv, rv = ivs[v]
            active = [u for u in active if ivs[u][1] >= lv]
            edges.extend((u, v) for u in active)
            active.append(v)
        return Graph(self.n, edges)

    def restrict(self, vertices: Sequence[int]) -> "IntervalRepresentation":
        return IntervalRepresentation(self.intervals[v] for v in vertices)


@dataclass(frozen=True)
class CliqueOrdering:
    """Maximal cliques in consecutive order; ``first[v]``/``last[v]`` are the
    (0-based) indices of the first and last clique containing v."""

    cliques: tuple[frozenset[int], ...]
    first: tuple[int, ...]
    last: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.cliques)


def clique_ordering(rep: IntervalRepresentation) -> CliqueOrdering:
    """Sweep the left endpoints; the intervals covering each one form a
    candidate clique, and candidates contained in another are dropped."""
    ivs = rep.intervals
    cands: list[frozenset[int]] = []
    for x in sorted({a for a, _ in ivs}):
        cands.append(frozenset(v for v, (a, b) in enumerate(ivs) if a <= x <= b))
    cliques = [
        c for i, c in enumerate(cands)
        if not any(i != j and c <= d and (c != d or j < i) for j, d in enumerate(cands))
    ]
    first = [-1] * rep.n
    last = [-1] * rep.n
    for i, c in enumerate(cliques):
        for v in c:
            if first[v] < 0:
                first[v] = i
            last[v] = i
    return CliqueOrdering(tuple(cliques), tuple(first), tuple(last))


@dataclass(frozen=True)
class PrevailingStructure:
    path: tuple[int, ...]
    q: frozenset[int]
    # each component of G - Q with the index into ``path`` of its apex
    components: tuple[tuple[frozenset[int], int], ...]


def prevailing(g: Graph, order: CliqueOrdering) -> PrevailingStructure:
    """Prevailing path and subgraph of a connected interval graph.

    From the current clique take the member forgotten last (smallest id on
    ties), jump to the clique where it is forgotten and add that clique to Q.
    """
    if g.n == 0:
        return PrevailingStructure((), frozenset(), ())
    if not is_connected(g):
        raise ValueError("prevailing structure needs a connected graph")
    F = order.last
    m = order.m
    path: list[int] = []
    q: set[int] = set()
    i = 0
    while True:
        v = min(order.cliques[i], key=lambda u: (-F[u], u))
        path.append(v)
        nxt = F[v]
        q |= order.cliques[nxt]
        if nxt >= m - 1 or nxt <= i:
            break
        i = nxt
    if i < m - 1 and F[path[-1]] < m - 1:
        # no progress possible; absorb the remainder into Q
        for c in order.cliques[F[path[-1]]:]:
            q |= c
    qs = frozenset(q)
    fs = [F[v] for v in path]
    comps = []
    for X in connected_components(g, [v for v in range(g.n) if v not in qs]):
        x = min(X)
        j = next(j for j, f in enumerate(fs) if order.first[x] < f)
        comps.append((X, j))
    return PrevailingStructure(tuple(path), qs, tuple(comps))


def hamiltonian_path(ps: PrevailingStructure, g: Graph, order: CliqueOrdering) -> Path:
    """v_1, M_1, v_2, M_2, ... where M_j are the vertices of the j-th
    selected clique not seen in the previous one, sorted by forget index."""
    F = order.last
    on_path = set(ps.path)
    out: list[int] = []
    placed: set[int] = set()
    for v in ps.path:
        out.append(v)
        placed.add(v)
        block = [u for u in order.cliques[F[v]] if u not in on_path and u not in placed]
        block.sort(key=lambda u: (F[u], u))
        out.extend(block)
        placed.update(block)
    rest = sorted(ps.q - placed, key=lambda u: (F[u], u))
    out.extend(rest)
    return Path(g, out)


# -- linear -> centered ------------------------------------------------------------


@dataclass(frozen=True)
class IntervalDecomposition:
    decomposition: TreedepthDecomposition
    coloring: Coloring
    k: int
    fallback_used: bool

    @property
    def depth(self) -> int:
        return self.decomposition.depth

    @property
    def bound(self) -> int:
        return self.k * self.k

    def report(self) -> dict:
        return {"k": self.k, "depth": self.depth, "bound": self.bound, "fallback_used": self.fallback_used}


class _Builder:
    def __init__(self, g: Graph, rep: IntervalRepresentation, psi: Coloring):
        self.g = g
        self.rep = rep
        self.psi = psi
        self.parent = [-1] * g.n
        self.fallback_used = False

    def forest(self, vertices: Sequence[int], above: int) -> None:
        for comp in connected_components(self.g, vertices):
            self.connected(sorted(comp), above)

    def connected(self, S: list[int], above: int) -> None:
        sub = induced_subgraph(self.g, S)
        host = sub.to_host
        order = clique_ordering(self.rep.restrict(host))
        ps = prevailing(sub.graph, order)
        q_local = sorted(ps.q)
        q_sub = induced_subgraph(sub.graph, q_local)
        try:
            tq = canonical_decomposition(q_sub.graph, self.psi.restrict([host[v] for v in q_local]))
        except NotCentered as exc:
            bad = sorted(host[q_local[v]] for v in exc.witness)
            raise NotLinear(f"prevailing subgraph is not centered on {bad}", bad) from None
        q_host = [host[v] for v in q_local]
        q_pos = {v: i for i, v in enumerate(q_local)}
        attach = []
        for X, _ in ps.components:
            nb = sorted(neighborhood(sub.graph, X), key=lambda v: tq.level_of(q_pos[v]))
            deepest = q_pos[nb[-1]]
            if not all(tq.is_ancestor(q_pos[u], deepest) for u in nb[:-1]):
                self.separate(S, sub, order, ps, above)
                return
            attach.append((X, q_host[deepest]))
        for i, p in enumerate(tq.parent):
            self.parent[q_host[i]] = q_host[p] if p >= 0 else above
        for X, u in attach:
            self.forest([host[v] for v in sorted(X)], u)

    def separate(self, S, sub, order, ps, above) -> None:
        # chain a middle prevailing clique and recurse on what is left
        self.fallback_used = True
        host = sub.to_host
        mid = ps.path[len(ps.path) // 2]
        sep = sorted((host[v] for v in order.cliques[order.last[mid]]), key=lambda v: (-self.psi[v], v))
        prev = above
        for v in sep:
            self.parent[v] = prev
            prev = v
        cut = set(sep)
        self.forest([v for v in S if v not in cut], prev)


def centered_from_linear(
    g: Graph,
    rep: IntervalRepresentation,
    psi: Coloring,
    check_input: bool | None = None,
) -> IntervalDecomposition:
    """Treedepth decomposition of an interval graph from a linear coloring.

    Q's part comes from the canonical decomposition of psi restricted to the
    prevailing subgraph; each remaining component is handled recursively and
    hung below the deepest of its neighbours when those form a chain.
    Otherwise the component falls back to splitting at a chained middle
    clique.  ``check_input`` runs the exhaustive linearity check first
    (default: only for n <= 12).
    """
    if rep.graph() != g:
        raise ValueError("graph does not match its interval representation")
    psi.check_total(g)
    if check_input is None:
        check_input = g.n <= 12
    if check_input:
        try:
            bad = verify_linear(g, psi)
        except BudgetExceeded:
            bad = None
        if bad is not None:
            raise NotLinear(f"path {list(bad.vertices)} has no center", bad)
    else:
        for u, v in g.sorted_edges():
            if psi[u] == psi[v]:
                raise NotLinear(f"edge ({u}, {v}) is monochromatic", (u, v))
    b = _Builder(g, rep, psi)
    b.forest(range(g.n), -1)
    t = TreedepthDecomposition(b.parent)
    bad_edge = check_valid(g, t)
    assert bad_edge is None, f"constructed decomposition misses edge {bad_edge}"
    return IntervalDecomposition(t, canonical_coloring(t), psi.size, b.fallback_used)
