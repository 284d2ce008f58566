import random
from collections import Counter
from itertools import product

import pytest

from lincolor.colorings import check_certificate, verify_linear
from lincolor.errors import PreconditionError
from lincolor.graph import connected_components
from lincolor.sat import (
    CnfFormula,
    DimacsError,
    NotSatisfying,
    assignment_to_path,
    build_gadget,
    decide_equivalence,
    parse_dimacs,
    path_to_assignment,
    preprocess,
    truth_table_sat,
)

THREE = CnfFormula(3, [[1, 2, -3], [-1, 2, 3], [-2]])
THREE_DIMACS = "c example\np cnf 3 3\n1 2 -3 0\n-1 2 3 0\n-2 0\n"


class TestDimacs:
    @pytest.mark.parametrize("text, n, clauses", [
        ("p cnf 1 1\n1 0", 1, [{1}]),
        ("p cnf 2 1\n1 -2 0", 2, [{1, -2}]),
        ("p cnf 1 1\n1 1 0", 1, [{1}]),
        ("c hi\np cnf 2 2\n1\n2 0 -1 0\n", 2, [{1, 2}, {-1}]),
        ("p cnf 2 1\n0\n", 2, [set()]),
    ])
    def test_parse(self, text, n, clauses):
        f = parse_dimacs(text)
        assert f.n_vars == n and list(f.clauses) == clauses

    @pytest.mark.parametrize("text", [
        "1 0",
        "p cnf x 1\n1 0",
        "p dnf 1 1\n1 0",
        "p cnf 1 1\n2 0",
        "p cnf 1 1\n1 a 0",
        "p cnf 1 2\n1 0",
    ])
    def test_errors(self, text):
        with pytest.raises(DimacsError):
            parse_dimacs(text)

    def test_round_trip(self):
        assert parse_dimacs(THREE.to_dimacs()) == THREE == parse_dimacs(THREE_DIMACS)


class TestPreprocess:
    def test_example(self):
        f = CnfFormula(2, [[1, -1, 2], [2], [-2]])
        pre = preprocess(f)
        assert pre.removed == (0,)
        assert pre.var_map == (2,)
        assert pre.formula == CnfFormula(1, [[1], [-1]])
        assert pre.forced == {}

    def test_three_clauses_unchanged(self):
        pre = preprocess(THREE)
        assert pre.formula == THREE and pre.forced == {} and pre.removed == ()

    def test_to_zero_clauses(self):
        pre = preprocess(CnfFormula(2, [[1, 2], [1, -2]]))
        assert pre.formula.m == 0 and pre.forced == {1: True}

    def test_fixpoint(self):
        # x1 is pure; removing its clause makes x2 pure as well
        pre = preprocess(CnfFormula(3, [[1, 2], [-2, 3], [2, -3], [-3, 1]]))
        assert pre.forced[1] is True
        assert all(any(-l in c for c in pre.formula.clauses) for c in pre.formula.clauses for l in c)

    def test_empty_clause_kept(self):
        assert preprocess(CnfFormula(1, [[]])).has_empty_clause


class TestGadget:
    def test_three_clauses(self):
        gi = build_gadget(THREE)
        assert gi.graph.n == 18
        assert set(gi.psi) == set(range(7))
        assert gi.coloring.colors == tuple(c + 1 for c in gi.psi)
        w = gi.w
        assert gi.true_paths == ((w[1, 1],), (w[2, 1], w[2, 2]), (w[3, 2],))
        assert gi.false_paths == ((w[1, 2],), (w[2, 3],), (w[3, 1],))

    def test_one_variable(self):
        gi = build_gadget(CnfFormula(1, [[1], [-1]]))
        assert gi.graph.n == 8

    def test_assumptions(self):
        for f, name in [
            (CnfFormula(1, [[1, -1]]), "no_tautology"),
            (CnfFormula(2, [[1, 2], [-1]]), "both_polarities"),
            (CnfFormula(1, [[]]), "no_empty_clause"),
            (CnfFormula(0, []), "nonempty"),
        ]:
            with pytest.raises(PreconditionError) as exc:
                build_gadget(f)
            assert exc.value.name == name

    def test_structure_on_random_formulas(self):
        rng = random.Random(11)
        done = 0
        while done < 200:
            f = _random_formula(rng)
            pre = preprocess(f)
            if pre.has_empty_clause or pre.formula.m == 0:
                continue
            f = pre.formula
            gi = build_gadget(f)
            n, m = f.n_vars, f.m
            L = sum(len(c) for c in f.clauses)
            assert gi.graph.n == 2 * n + m + 2 + L
            counts = Counter(gi.psi)
            assert all(counts[i] == 2 for i in range(n + 1))
            assert all(counts[n + j] == 1 + len(c) for j, c in enumerate(f.clauses, 1))
            for i in range(n + 1):
                assert gi.psi[gi.u[i]] == gi.psi[gi.u_prime[i]] == i
            for (i, j), v in gi.w.items():
                assert gi.psi[v] == gi.psi[gi.w_prime[j - 1]] == n + j
            cut = set(gi.u) | set(gi.u_prime)
            for comp in connected_components(gi.graph, [v for v in range(gi.graph.n) if v not in cut]):
                cols = [gi.psi[v] for v in comp]
                assert len(cols) == len(set(cols))
            done += 1


class TestTranslation:
    def test_three_clauses_path(self):
        gi = build_gadget(THREE)
        p = assignment_to_path(gi, (True, False, True))
        assert check_certificate(p, gi.coloring)
        assert p.vertices[0] == gi.u_prime[1] and p.vertices[-1] == gi.u_prime[0]
        assert path_to_assignment(gi, p) == (True, False, True)

    def test_three_clauses_unsatisfying(self):
        gi = build_gadget(THREE)
        # (F, F, F) satisfies every clause through its negative literals;
        # (F, F, T) falsifies clause 1, whose raw color n+1 = 4 stays unique
        assert THREE.satisfied_by((False, False, False))
        with pytest.raises(NotSatisfying, match=r"\[4\]"):
            assignment_to_path(gi, (False, False, True))

    def test_any_certificate_decodes(self):
        gi = build_gadget(THREE)
        w = verify_linear(gi.graph, gi.coloring)
        assert THREE.satisfied_by(path_to_assignment(gi, w.path))

    def test_rejects_non_certificate(self):
        gi = build_gadget(THREE)
        with pytest.raises(ValueError):
            path_to_assignment(gi, [gi.u_prime[1], gi.u_prime[2]])

    def test_round_trip_two_variables(self):
        f = CnfFormula(2, [[1, 2], [-1, -2], [-1, 2]])
        gi = build_gadget(f)
        sat = [a for a in product((False, True), repeat=2) if f.satisfied_by(a)]
        assert sat
        for a in sat:
            assert path_to_assignment(gi, assignment_to_path(gi, a)) == a
        for a in product((False, True), repeat=2):
            if a not in sat:
                with pytest.raises(NotSatisfying):
                    assignment_to_path(gi, a)


class TestEquivalence:
    def test_three_clauses(self):
        r = decide_equivalence(THREE)
        assert r.satisfiable and r.path_found and r.agree
        assert THREE.satisfied_by(r.assignment) and r.gadget_vertices == 18

    def test_unsat(self):
        f = CnfFormula(2, [[1, 2], [-1, 2], [1, -2], [-1, -2]])
        r = decide_equivalence(f)
        assert not r.satisfiable and r.path_found is False and r.agree

    def test_sat(self):
        r = decide_equivalence(CnfFormula(2, [[1, 2], [-1, -2]]))
        assert r.satisfiable and r.path_found and r.agree

    def test_short_circuits(self):
        assert decide_equivalence(CnfFormula(1, [[]])).route == "empty-clause"
        r = decide_equivalence(CnfFormula(2, [[1, 2]]))
        assert r.route == "no-clauses" and r.agree and CnfFormula(2, [[1, 2]]).satisfied_by(r.assignment)

    def test_budget_is_inconclusive(self):
        r = decide_equivalence(THREE, budget=2)
        assert r.inconclusive and r.agree is None

    def test_random(self):
        rng = random.Random(4)
        for _ in range(150):
            f = _random_formula(rng)
            r = decide_equivalence(f)
            assert r.agree
            assert (truth_table_sat(f) is not None) == r.satisfiable
            if r.assignment is not None:
                assert f.satisfied_by(r.assignment)


def _random_formula(rng, max_vars=3, max_clauses=4):
    n = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        vs = rng.sample(range(1, n + 1), rng.randint(1, n))
        clauses.append([v if rng.random() < 0.5 else -v for v in vs])
    return CnfFormula(n, clauses)
