"""Treedepth decompositions: validity, canonical conversions to and from
centered colorings, an exact solver, DFS decompositions and apex
restructuring."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .colorings import DEFAULT_BUDGET, Coloring, peel_centers
from .errors import BudgetExceeded, NotCentered, PreconditionError
from .graph import Graph, check_vertex_set, components_of_mask, is_connected, mask_of, members


@dataclass(frozen=True)
class TreedepthDecomposition:
    """Rooted forest over 0..n-1 stored as parent links (-1 marks a root)."""

    parent: tuple[int, ...]
    _depths: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, parent: Iterable[int]):
        ps = tuple(int(p) for p in parent)
        n = len(ps)
        for v, p in enumerate(ps):
            if p != -1 and not 0 <= p < n:
                raise ValueError(f"parent of {v} out of range: {p}")
        depths = [0] * n
        for v in range(n):
            if depths[v]:
                continue
            chain = []
            u = v
            on_chain = set()
            while u != -1 and not depths[u]:
                if u in on_chain:
                    raise ValueError("parent links contain a cycle")
                on_chain.add(u)
                chain.append(u)
                u = ps[u]
            d = 0 if u == -1 else depths[u]
            for w in reversed(chain):
                d += 1
                depths[w] = d
        object.__setattr__(self, "parent", ps)
        object.__setattr__(self, "_depths", tuple(depths))

    @property
    def n(self) -> int:
        return len(self.parent)

    @cached_property
    def depth(self) -> int:
        return max(self._depths, default=0)

    def level_of(self, v: int) -> int:
        """Number of vertices on the root..v path (roots are 1)."""
        return self._depths[v]

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    @property
    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p < 0]

    def ancestors(self, v: int) -> list[int]:
        """Proper ancestors of v, nearest first."""
        out = []
        u = self.parent[v]
        while u >= 0:
            out.append(u)
            u = self.parent[u]
        return out

    def is_ancestor(self, u: int, w: int) -> bool:
        """True if u is a proper ancestor of w."""
        if self._depths[u] >= self._depths[w]:
            return False
        x = w
        while self._depths[x] > self._depths[u]:
            x = self.parent[x]
        return x == u

    def related(self, u: int, w: int) -> bool:
        return u == w or self.is_ancestor(u, w) or self.is_ancestor(w, u)


def check_valid(g: Graph, t: TreedepthDecomposition) -> tuple[int, int] | None:
    """None if t is a treedepth decomposition of g, else the first bad edge."""
    if t.n != g.n:
        raise ValueError(f"decomposition has {t.n} vertices, graph has {g.n}")
    for u, v in g.sorted_edges():
        if not t.related(u, v):
            return (u, v)
    return None


def chain_decomposition(order: Sequence[int], n: int | None = None) -> TreedepthDecomposition:
    """Single path with order[0] as the root."""
    n = len(order) if n is None else n
    parent = [-1] * n
    for a, b in zip(order, order[1:]):
        parent[b] = a
    return TreedepthDecomposition(parent)


def canonical_coloring(t: TreedepthDecomposition, g: Graph | None = None) -> Coloring:
    """Color each vertex by its level counted from the bottom (roots get the
    depth, the deepest leaves get 1)."""
    if g is not None:
        bad = check_valid(g, t)
        if bad is not None:
            raise ValueError(f"invalid decomposition: edge {bad} is not ancestor-related")
    d = t.depth
    return Coloring(d - t.level_of(v) + 1 for v in range(t.n))


def canonical_decomposition(g: Graph, c: Coloring, prefer: Iterable[int] = ()) -> TreedepthDecomposition:
    """Decomposition from a centered coloring by repeatedly rooting a center.

    Among several centers the one with the largest color wins, then the
    smallest id.  Vertices in ``prefer`` are taken before all others.
    Raises :class:`NotCentered` with the stuck component otherwise.
    """
    c.check_total(g)
    pm = mask_of(prefer)
    colors = c.colors
    key = lambda v: (not (pm >> v) & 1, -colors[v], v)
    parent, bad = peel_centers(g, colors, key)
    if parent is None:
        raise NotCentered(members(bad))
    return TreedepthDecomposition(parent)


def dfs_decomposition(g: Graph, start: int = 0) -> TreedepthDecomposition:
    """DFS forest; components are searched from ``start`` first and then from
    their smallest vertex.  Neighbours are tried in ascending order."""
    parent = [-1] * g.n
    seen = [False] * g.n
    starts = ([start] if g.n else []) + list(range(g.n))
    for s in starts:
        if seen[s]:
            continue
        seen[s] = True
        stack = [(s, 0)]
        while stack:
            v, i = stack[-1]
            nbrs = g.adj[v]
            while i < len(nbrs) and seen[nbrs[i]]:
                i += 1
            if i == len(nbrs):
                stack.pop()
                continue
            stack[-1] = (v, i + 1)
            w = nbrs[i]
            seen[w] = True
            parent[w] = v
            stack.append((w, 0))
    return TreedepthDecomposition(parent)


# -- exact treedepth ---------------------------------------------------------------


class _ExactSolver:
    """Decision search ``td(S) <= k`` over connected vertex bitmasks.

    Memoises proven lower/upper bounds per mask, prunes with a shortest-path
    and a degeneracy lower bound, and tries roots that leave the smallest
    largest component first.
    """

    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.budget = budget
        self.nodes = 0
        self.lo: dict[int, int] = {}
        self.hi: dict[int, int] = {}
        self.root: dict[int, int] = {}

    def lower_bound(self, mask: int) -> int:
        if mask in self.lo:
            return self.lo[mask]
        g = self.g
        vs = members(mask)
        # any shortest path is a simple path; a path on L vertices needs
        # ceil(log2(L + 1)) levels
        far = self._bfs_far(vs[0], mask)[0]
        far, dist = self._bfs_far(far, mask)
        lb = math.ceil(math.log2(dist + 2))
        # treedepth >= treewidth + 1 >= degeneracy + 1
        deg = {v: bin(g.masks[v] & mask).count("1") for v in vs}
        alive = set(vs)
        dg = 0
        while alive:
            v = min(alive, key=lambda u: deg[u])
            dg = max(dg, deg[v])
            alive.discard(v)
            for w in members(g.masks[v] & mask):
                if w in alive:
                    deg[w] -= 1
        lb = max(lb, dg + 1)
        self.lo[mask] = lb
        return lb

    def _bfs_far(self, s: int, mask: int) -> tuple[int, int]:
        seen = 1 << s
        frontier = 1 << s
        last = s
        dist = -1
        masks = self.g.masks
        while frontier:
            dist += 1
            last = (frontier & -frontier).bit_length() - 1
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= masks[b.bit_length() - 1]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return last, dist

    def at_most(self, mask: int, k: int) -> bool:
        if k <= 0:
            return False
        if self.hi.get(mask, 1 << 30) <= k:
            return True
        if self.lower_bound(mask) > k:
            return False
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded("exact treedepth", self.budget)
        size = bin(mask).count("1")
        if size == 1:
            self.hi[mask] = 1
            self.root[mask] = mask.bit_length() - 1
            return True
        options = []
        for v in members(mask):
            comps = components_of_mask(self.g, mask & ~(1 << v))
            comps.sort(key=lambda m: -bin(m).count("1"))
            biggest = bin(comps[0]).count("1") if comps else 0
            options.append((biggest, v, comps))
        options.sort(key=lambda o: (o[0], o[1]))
        for biggest, v, comps in options:
            if all(self.at_most(cm, k - 1) for cm in comps):
                self.hi[mask] = k
                self.root[mask] = v
                return True
        self.lo[mask] = k + 1
        return False

    def solve(self, mask: int) -> int:
        k = self.lower_bound(mask)
        while not self.at_most(mask, k):
            k += 1
        return k

    def build(self, mask: int, parent: list[int], above: int) -> None:
        if not self.at_most(mask, self.hi.get(mask, bin(mask).count("1"))):
            raise AssertionError("bound lost during reconstruction")
        v = self.root[mask]
        parent[v] = above
        k = self.hi[mask]
        for cm in components_of_mask(self.g, mask & ~(1 << v)):
            if not self.at_most(cm, k - 1):
                raise AssertionError("component bound lost during reconstruction")
            self.build(cm, parent, v)


def treedepth_exact(g: Graph, budget: int = DEFAULT_BUDGET) -> tuple[int, TreedepthDecomposition]:
    """Minimum depth of a treedepth decomposition, with an optimal one."""
    solver = _ExactSolver(g, budget)
    parent = [-1] * g.n
    best = 0
    for comp in components_of_mask(g, (1 << g.n) - 1):
        best = max(best, solver.solve(comp))
        solver.build(comp, parent, -1)
    t = TreedepthDecomposition(parent)
    assert t.depth == best
    return best, t


# -- apex restructuring -------------------------------------------------------------


def apex_restructure(
    g: Graph,
    t: TreedepthDecomposition,
    s: Iterable[int],
    comp: Iterable[int],
) -> TreedepthDecomposition:
    """Rebuild t so every vertex of ``s`` sits above every vertex of ``comp``.

    ``comp`` must be a union of components of g - s and each vertex of ``s`` adjacent to
    all of ``comp``.  The result is the canonical decomposition of t's
    canonical coloring, taking centers outside ``comp`` first and then larger
    colors, so its depth never exceeds depth(t).
    """
    S = check_vertex_set(g, s)
    C = check_vertex_set(g, comp)
    bad = check_valid(g, t)
    if bad is not None:
        raise PreconditionError("valid_decomposition", f"edge {bad}")
    if not S or not C:
        raise PreconditionError("nonempty", "s and comp must be nonempty")
    if S & C:
        raise PreconditionError("disjoint", f"shared vertices {sorted(S & C)}")
    if not is_connected(g, S):
        raise PreconditionError("s_connected")
    rest = mask_of(v for v in range(g.n) if v not in S)
    comps = components_of_mask(g, rest)
    if any(c & mask_of(C) and c & ~mask_of(C) for c in comps):
        raise PreconditionError("comp_component", "comp is not a union of components of g - s")
    for a in sorted(S):
        if not all(g.has_edge(a, v) for v in C):
            raise PreconditionError("apex", f"vertex {a} is not adjacent to all of comp")
    phi = canonical_coloring(t)
    cm = mask_of(C)
    key = lambda v: ((cm >> v) & 1, -phi[v], v)
    parent, stuck = peel_centers(g, phi.colors, key)
    assert parent is not None, "canonical colorings of valid decompositions are centered"
    out = TreedepthDecomposition(parent)
    for a in S:
        for v in C:
            if not out.is_ancestor(a, v):
                raise PreconditionError(
                    "apex_order",
                    f"center peeling reached {v} in comp before {a} in s; "
                    "no depth-preserving restructuring exists for this input",
                )
    return out


def greedy_decomposition(g: Graph) -> TreedepthDecomposition:
    """Heuristic decomposition: root each component at the vertex whose
    removal leaves the smallest largest component (ties: smallest id)."""
    parent = [-1] * g.n
    todo = [(c, -1) for c in components_of_mask(g, (1 << g.n) - 1)]
    while todo:
        mask, above = todo.pop()
        best = None
        for v in members(mask):
            comps = components_of_mask(g, mask & ~(1 << v))
            big = max((bin(c).count("1") for c in comps), default=0)
            if best is None or big < best[0]:
                best = (big, v, comps)
        _, v, comps = best
        parent[v] = above
        todo.extend((c, v) for c in comps)
    return TreedepthDecomposition(parent)
