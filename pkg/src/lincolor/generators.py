"""Extremal families with their explicit linear colorings, seeded random
instances, and the edge-subdivision transform."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .colorings import Coloring
from .graph import Graph
from .interval import IntervalRepresentation


@dataclass(frozen=True)
class LabeledFamilyInstance:
    graph: Graph
    coloring: Coloring
    family: str
    params: dict[str, Any]
    roles: dict[str, list[int]] = field(default_factory=dict)

    def metadata(self) -> dict:
        return {"family": self.family, "params": dict(self.params), "roles": {k: list(v) for k, v in self.roles.items()}}


# -- recursive cliques ----------------------------------------------------------------


def _rclique(i: int) -> tuple[int, list[tuple[int, int]], list[int], dict[str, list[int]]]:
    if i <= 0:
        return 0, [], [], {}
    p = (i - 1) // 2
    n = i
    edges = [(a, b) for a, b in combinations(range(i), 2)]
    colors = [j for j in range(1, i + 1)]
    roles: dict[str, list[int]] = {"clique": list(range(i))}
    sub_n, sub_edges, sub_colors, _ = _rclique(p)
    for j in range(1, i + 1):
        palette = [1 + (j - 1 - t) % i for t in range(1, p + 1)]
        base = n
        edges.extend((base + a, base + b) for a, b in sub_edges)
        edges.extend((j - 1, base + a) for a in range(sub_n))
        colors.extend(palette[c - 1] for c in sub_colors)
        roles[f"H{j}"] = list(range(base, base + sub_n))
        n += sub_n
    return n, edges, colors, roles


def gen_recursive_clique(i: int) -> LabeledFamilyInstance:
    """R_i: a clique v_1..v_i (ids 0..i-1), each v_j joined to every vertex of
    its own copy H_j of R_p with p = (i-1)//2.

    v_j is colored j and H_j reuses R_p's coloring mapped onto the colors of
    the p clique vertices before v_j, cyclically: j-1, j-2, ..., j-p (mod i,
    in 1..i).  So color 1 sits on v_1 and inside H_2..H_{p+1} only.  Copies
    occupy contiguous id blocks, recorded in ``roles``.
    """
    if i < 1:
        raise ValueError("i must be at least 1")
    n, edges, colors, roles = _rclique(i)
    return LabeledFamilyInstance(Graph(n, edges), Coloring(colors), "rclique", {"i": i}, roles)


# -- complete binary trees and striped colorings ----------------------------------------


def gen_complete_binary_tree(levels: int) -> Graph:
    """BFS-indexed: children of v are 2v+1 and 2v+2."""
    if levels < 1:
        raise ValueError("levels must be at least 1")
    n = 2**levels - 1
    return Graph(n, [((v - 1) // 2, v) for v in range(1, n)])


@dataclass(frozen=True)
class Pattern:
    """Coloring pattern of B_a: ``colors[q]`` is a global color in 1..b for
    BFS position q, or 0 for a local vertex."""

    a: int
    b: int
    subsets: tuple[tuple[int, ...], ...]
    ell: int
    colors: tuple[int, ...]

    @property
    def local(self) -> tuple[int, ...]:
        return tuple(q for q, c in enumerate(self.colors) if c == 0)

    @property
    def p(self) -> int:
        return len(self.local)


def psi_pattern(a: int) -> Pattern:
    if a < 1:
        raise ValueError("a must be at least 1")
    b = 1
    while not 2**a < 3**b:
        b += 1
    masks = sorted(range(2**b), key=lambda m: (-bin(m).count("1"), m))
    subsets = tuple(tuple(c + 1 for c in range(b) if (m >> c) & 1) for m in masks)
    total = 0
    ell = 0
    while total < 2 ** (a - 1):
        total += 2 ** (len(subsets[ell]) - 1)
        ell += 1
    assert total == 2 ** (a - 1)
    n = 2**a - 1
    colors = [0] * n
    leaf0 = 2 ** (a - 1) - 1
    start = 0
    for i in range(ell):
        h = len(subsets[i])
        width = 2 ** (h - 1)
        # the subtree of height h whose leaves are in-order leaves start..start+width-1
        root = (leaf0 + start + 1) // width - 1
        for k in range(h):
            # level k+1 from the bottom sits h-1-k below the subtree root
            depth = h - 1 - k
            for off in range(2**depth):
                colors[(root + 1) * 2**depth - 1 + off] = subsets[i][k]
        start += width
    return Pattern(a, b, subsets, ell, tuple(colors))


def striped_btree_coloring(a: int, d: int) -> LabeledFamilyInstance:
    """Linear coloring of B_{ad} built from d stripes of a levels each.

    Stripe i (levels (i-1)a+1..ia from the bottom) colors every B_a copy with
    the pattern, using global colors (i-1)b+1..ib and local colors 1..p on
    odd stripes or p+1..2p on even ones; local colors are offset by d*b.
    """
    if a < 1 or d < 1:
        raise ValueError("a and d must be positive")
    pat = psi_pattern(a)
    levels = a * d
    g = gen_complete_binary_tree(levels)
    local_rank = {q: r for r, q in enumerate(pat.local)}
    colors = [0] * g.n
    roles: dict[str, list[int]] = {"global": [], "local": []}
    for i in range(1, d + 1):
        top_depth = levels - i * a  # depth (from the root) of each copy's root
        for root in range(2**top_depth - 1, 2 ** (top_depth + 1) - 1):
            for q in range(2**a - 1):
                depth = (q + 1).bit_length() - 1
                off = q + 1 - 2**depth
                v = (root + 1) * 2**depth - 1 + off
                if pat.colors[q]:
                    colors[v] = (i - 1) * pat.b + pat.colors[q]
                    roles["global"].append(v)
                else:
                    shift = 0 if i % 2 else pat.p
                    colors[v] = d * pat.b + shift + local_rank[q] + 1
                    roles["local"].append(v)
    for k in roles:
        roles[k].sort()
    params = {"a": a, "d": d, "b": pat.b, "p": pat.p}
    return LabeledFamilyInstance(g, Coloring(colors), "btree-striped", params, roles)


# -- subdivision ---------------------------------------------------------------------


def subdivide_with_new_color(g: Graph, c: Coloring) -> LabeledFamilyInstance:
    """Replace every edge uv (in sorted order) by u-s-v; all s share a fresh
    color one above the current maximum."""
    c.check_total(g)
    fresh = max(c.colors, default=0) + 1
    edges = []
    colors = list(c.colors)
    sub = []
    for k, (u, v) in enumerate(g.sorted_edges()):
        s = g.n + k
        edges += [(u, s), (s, v)]
        colors.append(fresh)
        sub.append(s)
    roles = {"original": list(range(g.n)), "subdivision": sub}
    return LabeledFamilyInstance(Graph(g.n + g.m, edges), Coloring(colors), "subdivided", {"color": fresh}, roles)


# -- random instances ------------------------------------------------------------------


def random_tree(n: int, seed: int) -> Graph:
    """Vertex i > 0 attaches to a uniformly random earlier vertex."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


def random_interval(n: int, span: int, seed: int) -> tuple[Graph, IntervalRepresentation]:
    """n intervals with integer endpoints drawn uniformly from [0, span]."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    ivs = []
    for _ in range(n):
        x, y = rng.randint(0, span), rng.randint(0, span)
        ivs.append((min(x, y), max(x, y)))
    rep = IntervalRepresentation(ivs)
    return rep.graph(), rep
