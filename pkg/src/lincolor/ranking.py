"""Optimal vertex ranking of trees by rank lists, and the color-set
potentials that compare it with linear colorings of the same tree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .colorings import Coloring
from .errors import NotATree
from .graph import Graph

RankList = tuple[int, ...]


@dataclass(frozen=True)
class Ranking:
    rank: tuple[int, ...]
    root: int
    lists: tuple[RankList, ...]
    parent: tuple[int, ...]

    @property
    def size(self) -> int:
        return max(self.rank, default=0)

    def as_coloring(self) -> Coloring:
        return Coloring(self.rank)


@dataclass(frozen=True)
class MergeStep:
    vertex: int
    child_lists: tuple[RankList, ...]
    x: int
    rank: int
    rank_list: RankList


def merge_rank_lists(children: Sequence[Iterable[int]]) -> tuple[int, RankList]:
    """Rank of a vertex from its children's rank lists, and its own list.

    x is the largest value on at least two child lists (0 when they are
    pairwise disjoint); the rank is the smallest integer above x missing from
    every list, and the new list keeps the rank plus everything above it.
    """
    seen: set[int] = set()
    x = 0
    for lst in children:
        for q in set(lst):
            if q in seen:
                x = max(x, q)
            seen.add(q)
    r = x + 1
    while r in seen:
        r += 1
    return r, tuple(sorted({r} | {q for q in seen if q > r}))


def _check_tree(tree: Graph) -> None:
    if not tree.is_tree():
        raise NotATree(f"expected a tree, got n={tree.n}, m={tree.m}")


def default_root(tree: Graph) -> int:
    """Smallest-id leaf (vertex 0 for a single vertex)."""
    for v in range(tree.n):
        if tree.degree(v) <= 1:
            return v
    raise NotATree("a tree has a leaf")


def rooted(tree: Graph, root: int) -> tuple[list[int], list[list[int]], list[int]]:
    """(parent, children, postorder) for the tree hung from ``root``."""
    parent = [-1] * tree.n
    children: list[list[int]] = [[] for _ in range(tree.n)]
    order = [root]
    seen = [False] * tree.n
    seen[root] = True
    for v in order:
        for w in tree.adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                children[v].append(w)
                order.append(w)
    return parent, children, order[::-1]


def schaffer_rank(tree: Graph, root: int | None = None, trace: list[MergeStep] | None = None) -> Ranking:
    _check_tree(tree)
    root = default_root(tree) if root is None else root
    parent, children, post = rooted(tree, root)
    rank = [0] * tree.n
    lists: list[RankList] = [()] * tree.n
    for v in post:
        kid_lists = [lists[u] for u in children[v]]
        r, lst = merge_rank_lists(kid_lists)
        rank[v] = r
        lists[v] = lst
        if trace is not None:
            seen: set[int] = set()
            x = 0
            for kl in kid_lists:
                x = max([x] + [q for q in kl if q in seen])
                seen.update(kl)
            trace.append(MergeStep(v, tuple(kid_lists), x, r, lst))
    return Ranking(tuple(rank), root, tuple(lists), tuple(parent))


def zeta(rank_list: Iterable[int]) -> int:
    return sum(2**r for r in rank_list)


# -- color-set families ------------------------------------------------------------


def compatible_sets(tree: Graph, root: int, psi: Coloring) -> tuple[tuple[int, ...], ...]:
    """Per-vertex families S(v) as sorted color bitmasks (bit c is color c).

    A leaf gets {{psi(v)}}; an inner vertex maps every set X of the union of
    its children's families to X - {psi(v)} when psi(v) is in X and that
    smaller set is also in the union, and to X + {psi(v)} otherwise, then
    adds {psi(v)}.
    """
    _check_tree(tree)
    psi.check_total(tree)
    _, children, post = rooted(tree, root)
    fam: list[tuple[int, ...]] = [()] * tree.n
    for v in post:
        bit = 1 << psi[v]
        if not children[v]:
            fam[v] = (bit,)
            continue
        union: set[int] = set()
        for u in children[v]:
            union.update(fam[u])
        out = {bit}
        for X in union:
            if X & bit and (X & ~bit) in union:
                out.add(X & ~bit)
            else:
                out.add(X | bit)
        fam[v] = tuple(sorted(out))
    return tuple(fam)


def color_set(mask: int) -> frozenset[int]:
    out = set()
    c = 0
    while mask:
        if mask & 1:
            out.add(c)
        mask >>= 1
        c += 1
    return frozenset(out)


def rho(family: Sequence[Sequence[int]], delta: int) -> list[int]:
    if delta < 3:
        raise ValueError(f"rho needs maximum degree at least 3, got {delta}")
    return [sum((delta - 1) ** bin(X).count("1") for X in sets) for sets in family]
