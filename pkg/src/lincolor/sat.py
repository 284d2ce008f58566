"""CNF-SAT to Non-centered Path: preprocessing, gadget construction,
translation between satisfying assignments and certificate paths, and an
end-to-end equivalence check against a truth table."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .colorings import DEFAULT_BUDGET, Coloring, check_certificate, verify_linear
from .errors import BudgetExceeded, PreconditionError
from .graph import Graph, Path


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are frozensets of signed literals over variables 1..n_vars.

    Empty clauses are representable (DIMACS allows them) but rejected by
    :func:`build_gadget`.
    """

    n_vars: int
    clauses: tuple[frozenset[int], ...]

    def __init__(self, n_vars: int, clauses: Iterable[Iterable[int]]):
        cls = tuple(frozenset(int(x) for x in c) for c in clauses)
        for c in cls:
            for lit in c:
                if lit == 0 or abs(lit) > n_vars:
                    raise ValueError(f"literal {lit} out of range for {n_vars} variables")
        object.__setattr__(self, "n_vars", int(n_vars))
        object.__setattr__(self, "clauses", cls)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any((lit > 0) == assignment[abs(lit) - 1] for lit in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n_vars} {self.m}"]
        lines += [" ".join(str(x) for x in sorted(c, key=lambda x: (abs(x), x))) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


class DimacsError(ValueError):
    pass


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    clauses: list[list[int]] = []
    cur: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed literal {tok!r}") from None
            if lit == 0:
                clauses.append(cur)
                cur = []
            elif abs(lit) > header[0]:
                raise DimacsError(f"line {lineno}: variable {abs(lit)} exceeds declared {header[0]}")
            else:
                cur.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if cur:
        clauses.append(cur)
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], clauses)


# -- preprocessing ----------------------------------------------------------------------


@dataclass(frozen=True)
class Preprocessed:
    """A formula meeting the gadget's assumptions plus how to undo the
    reduction: ``var_map[i]`` is the original index of reduced variable i+1,
    ``forced`` the values fixed along the way, and ``removed`` the original
    clause indices that were dropped."""

    original: CnfFormula
    formula: CnfFormula
    var_map: tuple[int, ...]
    forced: dict[int, bool]
    removed: tuple[int, ...]

    @property
    def has_empty_clause(self) -> bool:
        return any(not c for c in self.formula.clauses)

    def lift(self, assignment: Sequence[bool]) -> tuple[bool, ...]:
        """Assignment of the original variables; unconstrained ones are False."""
        out = [False] * self.original.n_vars
        for v, val in self.forced.items():
            out[v - 1] = val
        for i, v in enumerate(self.var_map):
            out[v - 1] = bool(assignment[i])
        return tuple(out)


def preprocess(f: CnfFormula) -> Preprocessed:
    """Drop tautological clauses, then repeatedly fix single-polarity
    variables and drop the clauses they satisfy."""
    live = [(j, c) for j, c in enumerate(f.clauses) if not any(-lit in c for lit in c)]
    removed = [j for j, c in enumerate(f.clauses) if any(-lit in c for lit in c)]
    forced: dict[int, bool] = {}
    while True:
        pos = {lit for _, c in live for lit in c if lit > 0}
        neg = {-lit for _, c in live for lit in c if lit < 0}
        pure = sorted((pos - neg) | (neg - pos))
        if not pure:
            break
        for v in pure:
            forced[v] = v in pos
        lits = {v if forced[v] else -v for v in pure}
        removed += [j for j, c in live if c & lits]
        live = [(j, c) for j, c in live if not c & lits]
    used = sorted({abs(lit) for _, c in live for lit in c})
    new_id = {v: i + 1 for i, v in enumerate(used)}
    clauses = [[(1 if lit > 0 else -1) * new_id[abs(lit)] for lit in c] for _, c in live]
    return Preprocessed(f, CnfFormula(len(used), clauses), tuple(used), forced, tuple(sorted(removed)))


# -- the gadget ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetInstance:
    """Graph and coloring whose non-centered paths encode satisfying
    assignments.  ``psi`` holds the raw colors 0..n+m; ``coloring`` is the
    same shifted by ``offset`` so it fits the positive-color format."""

    formula: CnfFormula
    graph: Graph
    psi: tuple[int, ...]
    u: tuple[int, ...]
    u_prime: tuple[int, ...]
    w_prime: tuple[int, ...]
    w: dict[tuple[int, int], int]
    true_paths: tuple[tuple[int, ...], ...]
    false_paths: tuple[tuple[int, ...], ...]
    offset: int = 1

    @property
    def coloring(self) -> Coloring:
        return Coloring(c + self.offset for c in self.psi)

    @property
    def p0(self) -> tuple[int, ...]:
        return self.u_prime[1:] + self.w_prime

    def roles(self) -> dict:
        return {
            "u": list(self.u),
            "u_prime": list(self.u_prime),
            "w_prime": list(self.w_prime),
            "w": {f"{i},{j}": v for (i, j), v in sorted(self.w.items())},
            "P_T": [list(p) for p in self.true_paths],
            "P_F": [list(p) for p in self.false_paths],
            "P_0": list(self.p0),
            "color_offset": self.offset,
        }


def check_assumptions(f: CnfFormula) -> None:
    if f.n_vars < 1 or f.m < 1:
        raise PreconditionError("nonempty", "need at least one variable and one clause")
    for j, c in enumerate(f.clauses, 1):
        if not c:
            raise PreconditionError("no_empty_clause", f"clause {j} is empty")
        if any(-lit in c for lit in c):
            raise PreconditionError("no_tautology", f"clause {j} has a variable and its negation")
    for v in range(1, f.n_vars + 1):
        if not any(v in c for c in f.clauses) or not any(-v in c for c in f.clauses):
            raise PreconditionError("both_polarities", f"variable {v} does not occur in both polarities")


def build_gadget(f: CnfFormula) -> GadgetInstance:
    """Vertices are numbered along the intended certificate:
    u'_1..u'_n, w'_1..w'_m, u_0, then per variable i the clause vertices of
    P^T_i, those of P^F_i (each by ascending clause index) and u_i, and
    finally the pendant u'_0."""
    check_assumptions(f)
    n, m = f.n_vars, f.m
    nxt = 0

    def take(k: int) -> list[int]:
        nonlocal nxt
        ids = list(range(nxt, nxt + k))
        nxt += k
        return ids

    u_prime_tail = take(n)
    w_prime = take(m)
    u = [take(1)[0]]
    psi: dict[int, int] = {}
    w: dict[tuple[int, int], int] = {}
    tpaths, fpaths = [], []
    edges = list(zip(u_prime_tail + w_prime, (u_prime_tail + w_prime)[1:]))
    edges.append((w_prime[-1], u[0]))
    for i in range(1, n + 1):
        pos = [j for j, c in enumerate(f.clauses, 1) if i in c]
        neg = [j for j, c in enumerate(f.clauses, 1) if -i in c]
        pt, pf = take(len(pos)), take(len(neg))
        ui = take(1)[0]
        for ids, js in ((pt, pos), (pf, neg)):
            for v, j in zip(ids, js):
                w[(i, j)] = v
                psi[v] = n + j
            chain = [u[-1]] + ids + [ui]
            edges.extend(zip(chain, chain[1:]))
        tpaths.append(tuple(pt))
        fpaths.append(tuple(pf))
        u.append(ui)
    u0p = take(1)[0]
    edges.append((u[-1], u0p))
    u_prime = [u0p] + u_prime_tail
    for i in range(n + 1):
        psi[u[i]] = i
        psi[u_prime[i]] = i
    for j, v in enumerate(w_prime, 1):
        psi[v] = n + j
    g = Graph(nxt, edges)
    return GadgetInstance(
        f, g, tuple(psi[v] for v in range(nxt)), tuple(u), tuple(u_prime), tuple(w_prime), w,
        tuple(tpaths), tuple(fpaths),
    )


class NotSatisfying(ValueError):
    pass


def assignment_to_path(gi: GadgetInstance, assignment: Sequence[bool]) -> Path:
    """P_0 . u_0 . P*_1 . u_1 ... P*_n . u_n . u'_0, taking P^T_i when x_i is
    true.  Raises :class:`NotSatisfying` naming a color that ends up unique."""
    n = gi.formula.n_vars
    if len(assignment) != n:
        raise ValueError(f"expected {n} truth values, got {len(assignment)}")
    vs = list(gi.p0) + [gi.u[0]]
    for i in range(n):
        vs += list(gi.true_paths[i] if assignment[i] else gi.false_paths[i])
        vs.append(gi.u[i + 1])
    vs.append(gi.u_prime[0])
    path = Path(gi.graph, vs)
    if not check_certificate(path, gi.coloring):
        counts: dict[int, int] = {}
        for v in vs:
            counts[gi.psi[v]] = counts.get(gi.psi[v], 0) + 1
        lonely = sorted(c for c, k in counts.items() if k == 1)
        raise NotSatisfying(f"assignment leaves color(s) {lonely} unique on the path")
    return path


def path_to_assignment(gi: GadgetInstance, path: Path | Sequence[int]) -> tuple[bool, ...]:
    """Read the truth values off a certificate path."""
    vs = list(path.vertices if isinstance(path, Path) else path)
    if not check_certificate(vs, gi.coloring):
        raise ValueError("path is not a certificate: some color appears once")
    ends = {vs[0], vs[-1]}
    if ends != {gi.u_prime[1], gi.u_prime[0]}:
        raise ValueError("certificate does not run from u'_1 to u'_0")
    on = set(vs)
    out = []
    for i, (pt, pf) in enumerate(zip(gi.true_paths, gi.false_paths), 1):
        t_in, f_in = set(pt) <= on, set(pf) <= on
        if t_in == f_in or (set(pt) & on and set(pf) & on):
            raise ValueError(f"certificate does not choose exactly one branch for x{i}")
        out.append(t_in)
    assert gi.formula.satisfied_by(out)
    return tuple(out)


# -- equivalence ------------------------------------------------------------------------


def truth_table_sat(f: CnfFormula) -> tuple[bool, ...] | None:
    for bits in product((False, True), repeat=f.n_vars):
        if f.satisfied_by(bits):
            return bits
    return None


@dataclass
class EquivalenceReport:
    satisfiable: bool
    route: str  # "gadget", "no-clauses" or "empty-clause"
    path_found: bool | None = None
    certificate: tuple[int, ...] | None = None
    assignment: tuple[bool, ...] | None = None
    gadget_vertices: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def inconclusive(self) -> bool:
        return self.route == "gadget" and self.path_found is None

    @property
    def agree(self) -> bool | None:
        if self.inconclusive:
            return None
        if self.route == "gadget":
            return self.path_found == self.satisfiable
        return (self.route == "no-clauses") == self.satisfiable


def decide_equivalence(f: CnfFormula, budget: int = DEFAULT_BUDGET) -> EquivalenceReport:
    """Compare truth-table satisfiability of f with the existence of a
    non-centered path in the gadget of its preprocessed form."""
    sat = truth_table_sat(f) is not None
    pre = preprocess(f)
    if pre.has_empty_clause:
        return EquivalenceReport(sat, "empty-clause")
    if pre.formula.m == 0:
        return EquivalenceReport(sat, "no-clauses", assignment=pre.lift([]))
    gi = build_gadget(pre.formula)
    rep = EquivalenceReport(sat, "gadget", gadget_vertices=gi.graph.n)
    try:
        found = verify_linear(gi.graph, gi.coloring, budget, stats=rep.stats)
    except BudgetExceeded:
        return rep
    rep.path_found = found is not None
    if found is not None:
        rep.certificate = found.vertices
        rep.assignment = pre.lift(path_to_assignment(gi, found.path))
        assert f.satisfied_by(rep.assignment)
    return rep
