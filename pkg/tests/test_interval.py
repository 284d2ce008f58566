import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lincolor.colorings import Coloring, chi_lin_exact, is_centered
from lincolor.errors import NotLinear
from lincolor.generators import random_interval
from lincolor.graph import complete_graph, connected_components, induced_subgraph, is_connected, path_graph
from lincolor.interval import (
    IntervalRepresentation,
    centered_from_linear,
    clique_ordering,
    hamiltonian_path,
    prevailing,
)
from lincolor.treedepth import canonical_coloring, check_valid, greedy_decomposition, treedepth_exact

from conftest import connected_subsets

FOUR = IntervalRepresentation([(0, 2), (1, 4), (3, 6), (5, 7)])
P5 = IntervalRepresentation([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])


@st.composite
def interval_reps(draw, max_n=12, span=20):
    n = draw(st.integers(1, max_n))
    ivs = []
    for _ in range(n):
        a, b = draw(st.integers(0, span)), draw(st.integers(0, span))
        ivs.append((min(a, b), max(a, b)))
    return IntervalRepresentation(ivs)


def test_graph_is_intersection_graph():
    assert FOUR.graph().sorted_edges() == [(0, 1), (1, 2), (2, 3)]
    with pytest.raises(ValueError):
        IntervalRepresentation([(3, 1)])


class TestCliqueOrdering:
    def test_four_intervals(self):
        o = clique_ordering(FOUR)
        assert o.cliques == ({0, 1}, {1, 2}, {2, 3})
        assert o.last == (0, 1, 2, 2)
        assert o.first == (0, 0, 1, 2)

    def test_single_interval(self):
        assert clique_ordering(IntervalRepresentation([(2, 5)])).cliques == ({0},)

    def test_triangle(self):
        o = clique_ordering(IntervalRepresentation([(0, 3), (1, 4), (2, 5)]))
        assert o.cliques == ({0, 1, 2},)

    @settings(max_examples=200, deadline=None)
    @given(interval_reps(max_n=30, span=60))
    def test_consecutive_and_maximal(self, rep):
        g = rep.graph()
        o = clique_ordering(rep)
        for v in range(rep.n):
            assert all((v in c) == (o.first[v] <= i <= o.last[v]) for i, c in enumerate(o.cliques))
        for c in o.cliques:
            assert all(g.has_edge(u, w) for u in c for w in c if u < w)
            assert not any(all(g.has_edge(x, u) for u in c) for x in range(rep.n) if x not in c)
        assert len(set(o.cliques)) == o.m


def _check_prevailing(g, o, ps):
    F = o.last
    fs = [F[v] for v in ps.path]
    assert fs == sorted(set(fs))
    for a, b in zip(ps.path, ps.path[1:]):
        assert g.has_edge(a, b)
    for i in range(len(ps.path)):
        for j in range(i + 2, len(ps.path)):
            assert not g.has_edge(ps.path[i], ps.path[j])
            if j == i + 2:
                assert not (o.cliques[fs[i]] & o.cliques[fs[j]])
    assert ps.q == set().union(*(o.cliques[f] for f in fs))
    rest = [v for v in range(g.n) if v not in ps.q]
    assert sorted(map(sorted, connected_components(g, rest))) == sorted(sorted(X) for X, _ in ps.components)
    for X, j in ps.components:
        assert all(g.has_edge(ps.path[j], x) for x in X)
    hp = hamiltonian_path(ps, g, o)
    assert set(hp.vertices) == ps.q and len(hp) == len(ps.q)


class TestPrevailing:
    def test_four_intervals(self):
        g, o = FOUR.graph(), clique_ordering(FOUR)
        ps = prevailing(g, o)
        assert ps.path == (1, 2)
        assert ps.q == {1, 2, 3}
        assert ps.components == ((frozenset({0}), 0),)
        assert hamiltonian_path(ps, g, o).vertices == (1, 2, 3)

    def test_single_clique(self):
        rep = IntervalRepresentation([(0, 5), (1, 5), (2, 5)])
        g, o = rep.graph(), clique_ordering(rep)
        ps = prevailing(g, o)
        assert ps.path == (0,) and ps.q == {0, 1, 2} and ps.components == ()
        assert hamiltonian_path(ps, g, o).vertices == (0, 1, 2)

    def test_single_vertex(self):
        rep = IntervalRepresentation([(0, 0)])
        ps = prevailing(rep.graph(), clique_ordering(rep))
        assert hamiltonian_path(ps, rep.graph(), clique_ordering(rep)).vertices == (0,)

    def test_path_of_intervals(self):
        g, o = P5.graph(), clique_ordering(P5)
        ps = prevailing(g, o)
        # only the cliques where path vertices are forgotten join Q, so the
        # first interval is left over as a gap component under v_1
        assert ps.path == (1, 2, 3)
        assert ps.q == {1, 2, 3, 4}
        assert ps.components == ((frozenset({0}), 0),)

    def test_disconnected(self):
        rep = IntervalRepresentation([(0, 1), (5, 6)])
        with pytest.raises(ValueError):
            prevailing(rep.graph(), clique_ordering(rep))

    @settings(max_examples=200, deadline=None)
    @given(interval_reps(max_n=25, span=40))
    def test_invariants(self, rep):
        for comp in connected_components(rep.graph()):
            vs = sorted(comp)
            sub = rep.restrict(vs)
            g, o = sub.graph(), clique_ordering(sub)
            _check_prevailing(g, o, prevailing(g, o))

    @settings(max_examples=60, deadline=None)
    @given(interval_reps(max_n=9, span=14))
    def test_every_connected_piece_of_q_is_traceable(self, rep):
        g = rep.graph()
        if not is_connected(g):
            return
        o = clique_ordering(rep)
        q = sorted(prevailing(g, o).q)
        sub = induced_subgraph(g, q).graph
        for vs in connected_subsets(sub):
            assert any(all(sub.has_edge(a, b) for a, b in zip(p, p[1:])) for p in permutations(vs))


class TestCenteredFromLinear:
    def test_p4(self):
        rep = IntervalRepresentation([(0, 1), (1, 2), (2, 3), (3, 4)])
        res = centered_from_linear(rep.graph(), rep, Coloring([1, 2, 3, 1]))
        assert check_valid(path_graph(4), res.decomposition) is None
        assert res.depth <= 9 and res.k == 3

    def test_clique(self):
        rep = IntervalRepresentation([(0, 3)] * 4)
        res = centered_from_linear(rep.graph(), rep, Coloring([1, 2, 3, 4]))
        assert rep.graph() == complete_graph(4)
        assert res.depth == 4 and res.bound == 16

    def test_four_intervals_with_exact_coloring(self):
        g = FOUR.graph()
        k, t = treedepth_exact(g)
        res = centered_from_linear(g, FOUR, canonical_coloring(t))
        assert check_valid(g, res.decomposition) is None and res.depth <= k * k
        assert res.report() == {"k": k, "depth": res.depth, "bound": k * k, "fallback_used": res.fallback_used}

    def test_rejects_non_linear(self):
        with pytest.raises(NotLinear):
            centered_from_linear(P5.graph(), P5, Coloring([1, 2, 1, 2, 3]))

    def test_rejects_mismatched_representation(self):
        with pytest.raises(ValueError):
            centered_from_linear(path_graph(5), FOUR, Coloring([1, 2, 1, 2, 3]))

    def test_random_pipeline(self):
        for seed in range(60):
            rng = random.Random(seed)
            n = rng.randint(1, 30)
            g, rep = random_interval(n, 2 * n, seed)
            psi = canonical_coloring(greedy_decomposition(g))
            res = centered_from_linear(g, rep, psi)
            assert check_valid(g, res.decomposition) is None
            assert res.coloring.size == res.depth <= psi.size ** 2
            assert is_centered(g, res.coloring)

    def test_oracle_colorings(self):
        for seed in range(40):
            n = random.Random(seed).randint(1, 8)
            g, rep = random_interval(n, 2 * n, seed)
            k, psi = chi_lin_exact(g)
            o = clique_ordering(rep)
            for comp in connected_components(g):
                vs = sorted(comp)
                sub = induced_subgraph(g, vs).graph
                so = clique_ordering(rep.restrict(vs))
                ps = prevailing(sub, so)
                q = sorted(ps.q)
                assert is_centered(induced_subgraph(sub, q).graph, psi.restrict([vs[v] for v in q]))
            res = centered_from_linear(g, rep, psi)
            assert check_valid(g, res.decomposition) is None and res.depth <= k * k
            assert o.m >= 1
