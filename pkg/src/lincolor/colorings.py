"""Colorings, centered/linear verification and exact oracles.

A coloring is centered when every connected subgraph has a vertex whose
color appears exactly once in it, and linear when the same holds for every
path (not necessarily induced).  Checking the former is polynomial by
peeling centers; checking the latter is co-NP-complete, so
:func:`verify_linear` is an exhaustive search with an explicit node budget.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded
from .graph import Graph, Path, components_of_mask, members

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]

    def __init__(self, colors: Iterable[int]):
        cs = tuple(int(c) for c in colors)
        if any(c < 1 for c in cs):
            raise ValueError("colors must be positive integers")
        object.__setattr__(self, "colors", cs)

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def size(self) -> int:
        return len(set(self.colors))

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def restrict(self, vertices: Sequence[int]) -> "Coloring":
        return Coloring(self.colors[v] for v in vertices)

    def check_total(self, g: Graph) -> None:
        if len(self.colors) != g.n:
            raise ValueError(f"coloring has {len(self.colors)} entries, graph has {g.n} vertices")


@dataclass(frozen=True)
class CenteredWitness:
    """A connected vertex set in which no color appears exactly once."""

    vertices: frozenset[int]

    kind = "subgraph"


@dataclass(frozen=True)
class NonCenteredPath:
    path: Path
    multiplicities: tuple[tuple[int, int], ...]

    kind = "path"

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.path.vertices


def _non_centered_path(g: Graph, c: Coloring, vs: Sequence[int]) -> NonCenteredPath:
    if vs[0] > vs[-1]:
        vs = vs[::-1]
    counts = Counter(c[v] for v in vs)
    return NonCenteredPath(Path(g, vs), tuple(sorted(counts.items())))


def check_certificate(path: Path | Sequence[int], c: Coloring) -> bool:
    """True iff every color on the path appears at least twice on it."""
    vs = path.vertices if isinstance(path, Path) else path
    counts = Counter(c[v] for v in vs)
    return all(k >= 2 for k in counts.values())


# -- centered colorings --------------------------------------------------------


def peel_centers(
    g: Graph,
    colors: Sequence[int],
    key: Callable[[int], tuple] | None = None,
) -> tuple[list[int] | None, int]:
    """Iterated center removal.

    Each component picks the center minimising ``key`` (default: largest
    color, then smallest id), becomes a root, and its remaining components
    hang below it.  Returns ``(parent, 0)`` on success or ``(None, mask)``
    where ``mask`` is a connected set with no uniquely occurring color.
    """
    if key is None:
        key = lambda v: (-colors[v], v)
    parent = [-1] * g.n
    todo = [(comp, -1) for comp in reversed(components_of_mask(g, (1 << g.n) - 1))]
    while todo:
        comp, par = todo.pop()
        vs = members(comp)
        counts = Counter(colors[v] for v in vs)
        centers = [v for v in vs if counts[colors[v]] == 1]
        if not centers:
            return None, comp
        v = min(centers, key=key)
        parent[v] = par
        rest = comp & ~(1 << v)
        for sub in reversed(components_of_mask(g, rest)):
            todo.append((sub, v))
    return parent, 0


def verify_centered(g: Graph, c: Coloring) -> CenteredWitness | None:
    """None when c is centered on g, otherwise a connected non-centered set."""
    c.check_total(g)
    parent, bad = peel_centers(g, c.colors)
    if parent is None:
        return CenteredWitness(frozenset(members(bad)))
    return None


def is_centered(g: Graph, c: Coloring) -> bool:
    return verify_centered(g, c) is None


# -- linear colorings -----------------------------------------------------------


def verify_linear(
    g: Graph, c: Coloring, budget: int = DEFAULT_BUDGET, stats: dict | None = None
) -> NonCenteredPath | None:
    """None when every path of g has a center under c, else one that doesn't.

    Forests use a pairwise route over unique paths; other graphs get a DFS
    over simple paths with (endpoint, vertex set) states visited once.
    Raises :class:`BudgetExceeded` when more than ``budget`` states would be
    explored.  When ``stats`` is given it receives the route taken and the
    number of search states.
    """
    c.check_total(g)
    stats = {} if stats is None else stats
    stats.update(route="edges", nodes=0)
    for u, v in g.sorted_edges():
        if c[u] == c[v]:
            return _non_centered_path(g, c, (u, v))
    if g.is_forest():
        stats["route"] = "forest"
        return _forest_non_centered(g, c)
    stats["route"] = "search"
    return _search_non_centered(g, c, budget, stats)


def is_linear(g: Graph, c: Coloring, budget: int = DEFAULT_BUDGET) -> bool:
    return verify_linear(g, c, budget) is None


def _search_non_centered(g: Graph, c: Coloring, budget: int, stats: dict) -> NonCenteredPath | None:
    n = g.n
    colors = c.colors
    adj = g.adj
    seen: set[tuple[int, int]] = set()
    counts = Counter()
    nodes = 0
    for s in range(n):
        state = (s, 1 << s)
        if state in seen:
            continue
        seen.add(state)
        path = [s]
        counts.clear()
        counts[colors[s]] = 1
        singles = 1
        mask = 1 << s
        stack = [0]
        while stack:
            v = path[-1]
            i = stack[-1]
            nbrs = adj[v]
            advanced = False
            while i < len(nbrs):
                w = nbrs[i]
                i += 1
                if (mask >> w) & 1:
                    continue
                nm = mask | (1 << w)
                if (w, nm) in seen:
                    continue
                seen.add((w, nm))
                nodes += 1
                stats["nodes"] = nodes
                if nodes > budget:
                    raise BudgetExceeded("non-centered path search", budget)
                stack[-1] = i
                cw = colors[w]
                k = counts[cw]
                counts[cw] = k + 1
                if k == 0:
                    singles += 1
                elif k == 1:
                    singles -= 1
                path.append(w)
                mask = nm
                if singles == 0:
                    return _non_centered_path(g, c, path)
                stack.append(0)
                advanced = True
                break
            if advanced:
                continue
            stack.pop()
            w = path.pop()
            mask &= ~(1 << w)
            cw = colors[w]
            k = counts[cw]
            counts[cw] = k - 1
            if k == 1:
                singles -= 1
            elif k == 2:
                singles += 1
    return None


def _forest_non_centered(g: Graph, c: Coloring, chunk: int = 1 << 22) -> NonCenteredPath | None:
    n = g.n
    palette = sorted(set(c.colors))
    index = {col: i for i, col in enumerate(palette)}
    K = len(palette)
    parent = [-1] * n
    order: list[int] = []
    tin = [0] * n
    tout = [0] * n
    seen = [False] * n
    for r in range(n):
        if seen[r]:
            continue
        seen[r] = True
        stack = [(r, 0)]
        tin[r] = len(order)
        order.append(r)
        while stack:
            v, i = stack[-1]
            if i < len(g.adj[v]):
                stack[-1] = (v, i + 1)
                w = g.adj[v][i]
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    tin[w] = len(order)
                    order.append(w)
                    stack.append((w, 0))
            else:
                tout[v] = len(order)
                stack.pop()
    # R[v] = color counts on the root..v path; row n is the all-zero row.
    R = np.zeros((n + 1, K), dtype=np.int32)
    for v in order:
        p = parent[v]
        R[v] = R[p if p >= 0 else n]
        R[v, index[c[v]]] += 1
    order_arr = np.array(order, dtype=np.int64)

    def path_between(a: int, b: int, w: int) -> list[int]:
        left = [a]
        while left[-1] != w:
            left.append(parent[left[-1]])
        right = [b]
        while right[-1] != w:
            right.append(parent[right[-1]])
        return left + right[-2::-1]

    for w in range(n):
        pw = parent[w] if parent[w] >= 0 else n
        base = R[w] + R[pw]
        kids = [u for u in g.adj[w] if parent[u] == w]
        blocks = [order_arr[tin[u]:tout[u]] for u in kids]
        for blk in blocks:
            vals = R[blk] - R[pw]
            bad = ~np.any(vals == 1, axis=1)
            if bad.any():
                a = int(blk[np.argmax(bad)])
                return _non_centered_path(g, c, path_between(a, w, w))
        for i in range(len(blocks)):
            A = blocks[i]
            RA = R[A]
            for j in range(i + 1, len(blocks)):
                B = blocks[j]
                RB = R[B] - base
                step = max(1, chunk // max(1, len(B) * K))
                for lo in range(0, len(A), step):
                    M = RA[lo:lo + step, None, :] + RB[None, :, :]
                    bad = ~np.any(M == 1, axis=2)
                    if bad.any():
                        ia, ib = np.unravel_index(np.argmax(bad), bad.shape)
                        a, b = int(A[lo + ia]), int(B[ib])
                        return _non_centered_path(g, c, path_between(a, b, w))
    return None


def traceable_sets(g: Graph, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Bitmasks of every vertex set that is the vertex set of some path.

    Whether a path has a center depends only on its vertex set, so these
    masks are exactly the constraints of a linear coloring.
    """
    seen: set[tuple[int, int]] = set()
    out: set[int] = set()
    nodes = 0
    adj = g.adj
    for s in range(g.n):
        todo = [(s, 1 << s)]
        while todo:
            v, mask = todo.pop()
            if (v, mask) in seen:
                continue
            seen.add((v, mask))
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("path enumeration", budget)
            out.add(mask)
            for w in adj[v]:
                if not (mask >> w) & 1:
                    todo.append((w, mask | (1 << w)))
    return sorted(out)


# -- exact oracles ----------------------------------------------------------------


def _min_coloring(g: Graph, constraints: list[int], lower: int, budget: int, what: str) -> tuple[int, Coloring]:
    """Smallest k >= lower admitting a coloring where every constraint set
    has a uniquely colored vertex.  Colorings are enumerated canonically:
    each vertex, in BFS-ish order, may only open the next unused color."""
    n = g.n
    if n == 0:
        return 0, Coloring(())
    order: list[int] = []
    placed = [False] * n
    for s in range(n):
        if placed[s]:
            continue
        placed[s] = True
        queue = [s]
        for v in queue:
            order.append(v)
            for w in g.adj[v]:
                if not placed[w]:
                    placed[w] = True
                    queue.append(w)
    pos = {v: i for i, v in enumerate(order)}
    due: list[list[list[int]]] = [[] for _ in range(n)]
    for mask in constraints:
        vs = members(mask)
        if len(vs) == 1:
            continue
        due[max(pos[v] for v in vs)].append(vs)
    nodes = 0
    for k in range(max(lower, 1), n + 1):
        col = [0] * n

        def ok(i: int) -> bool:
            for vs in due[i]:
                cnt = Counter(col[v] for v in vs)
                if not any(cnt[col[v]] == 1 for v in vs):
                    return False
            return True

        def rec(i: int, used: int) -> bool:
            nonlocal nodes
            if i == n:
                return True
            v = order[i]
            for color in range(1, min(k, used + 1) + 1):
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(what, budget)
                col[v] = color
                if ok(i) and rec(i + 1, max(used, color)):
                    return True
            col[v] = 0
            return False

        if rec(0, 0):
            return k, Coloring(col)
    raise AssertionError("an all-distinct coloring always satisfies the constraints")


def chi_lin_exact(g: Graph, budget: int = DEFAULT_BUDGET) -> tuple[int, Coloring]:
    """Linear coloring number with a witness coloring (exponential)."""
    sets = traceable_sets(g, budget)
    longest = max((bin(m).count("1") for m in sets), default=0)
    lower = math.ceil(math.log2(longest + 1)) if longest else 0
    return _min_coloring(g, sets, lower, budget, "linear coloring number")


def chi_cen_exact(g: Graph, budget: int = DEFAULT_BUDGET) -> tuple[int, Coloring]:
    """Centered coloring number, via the canonical coloring of an optimal
    treedepth decomposition."""
    from .treedepth import canonical_coloring, treedepth_exact

    depth, t = treedepth_exact(g, budget)
    return depth, canonical_coloring(t)
