"""Command line front end.

Every run prints its data (JSON or text) to stdout or ``--out`` and exactly
one JSON run report on stderr.  Exit codes: 0 positive verdict or success,
1 negative verdict, 2 usage or input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import signal
import sys
import time
from contextlib import contextmanager
from pathlib import Path as FsPath
from typing import Any

from . import formats as fmt
from .colorings import DEFAULT_BUDGET, chi_cen_exact, chi_lin_exact, verify_centered, verify_linear
from .errors import BudgetExceeded, NotATree, NotLinear, PreconditionError
from .generators import (
    gen_complete_binary_tree,
    gen_recursive_clique,
    random_interval,
    random_tree,
    striped_btree_coloring,
)
from .interval import centered_from_linear
from .ranking import schaffer_rank
from .sat import DimacsError, build_gadget, parse_dimacs, preprocess
from .treedepth import canonical_coloring, greedy_decomposition, treedepth_exact

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # single-line diagnostics instead of usage dumps
        raise UsageError(f"{self.prog}: {message}")


class _Run:
    """Collects inputs, statistics and the verdict for the run report."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.digest = hashlib.sha256()
        self.verdict = "ok"
        self.stats: dict[str, Any] = {}

    def read(self, path: str | None) -> str:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            try:
                text = FsPath(path).read_text()
            except OSError as exc:
                raise fmt.FormatError(f"cannot read {path}: {exc.strerror}") from None
        self.digest.update(text.encode())
        return text

    def emit(self, text: str) -> None:
        if self.args.out:
            FsPath(self.args.out).write_text(text)
        else:
            sys.stdout.write(text)


@contextmanager
def _deadline(ms: int | None):
    if not ms:
        yield
        return

    def fire(signum, frame):
        raise BudgetExceeded("wall clock", ms, "ms")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, ms / 1000)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


# -- input helpers ----------------------------------------------------------------------


def _graph_and_coloring(run: _Run, need_coloring: bool = True):
    a = run.args
    g, c, bundle = fmt.read_graph_text(run.read(a.graph))
    if getattr(a, "coloring", None):
        c = fmt.read_coloring_text(run.read(a.coloring))
    if need_coloring and c is None:
        raise fmt.FormatError("no coloring given (use --coloring or pipe a bundle)")
    if c is not None:
        try:
            c.check_total(g)
        except ValueError as exc:
            raise fmt.FormatError(str(exc)) from None
    return g, c, bundle


# -- subcommands ------------------------------------------------------------------------


def cmd_gen(run: _Run) -> int:
    a = run.args
    extra: dict[str, Any] = {}
    if a.family == "rclique":
        inst = gen_recursive_clique(a.i)
        g, c, meta = inst.graph, inst.coloring, inst.metadata()
    elif a.family == "btree":
        if a.stripe_a:
            if a.levels % a.stripe_a:
                raise UsageError(f"--levels {a.levels} is not a multiple of --stripe-a {a.stripe_a}")
            inst = striped_btree_coloring(a.stripe_a, a.levels // a.stripe_a)
            g, c, meta = inst.graph, inst.coloring, inst.metadata()
        else:
            g = gen_complete_binary_tree(a.levels)
            c = schaffer_rank(g).as_coloring()
            meta = {"family": "btree", "params": {"levels": a.levels}, "roles": {}}
    elif a.family == "random-tree":
        g = random_tree(a.n, a.seed)
        c = schaffer_rank(g).as_coloring()
        meta = {"family": "random-tree", "params": {"n": a.n, "seed": a.seed}, "roles": {}}
    else:
        span = a.span if a.span is not None else 2 * a.n
        g, rep = random_interval(a.n, span, a.seed)
        c = canonical_coloring(greedy_decomposition(g))
        meta = {"family": "random-interval", "params": {"n": a.n, "span": span, "seed": a.seed}, "roles": {}}
        extra["intervals"] = [list(iv) for iv in rep.intervals]
    run.stats.update(n=g.n, m=g.m, colors=c.size)
    bundle = fmt.make_bundle(g, c, meta, **extra)
    if a.split_dir:
        d = FsPath(a.split_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "graph.el").write_text(fmt.write_edge_list(g))
        (d / "coloring.json").write_text(fmt.dumps(bundle["coloring"]))
        (d / "metadata.json").write_text(fmt.dumps(meta))
        if "intervals" in extra:
            (d / "intervals.txt").write_text("".join(f"{l} {r}\n" for l, r in extra["intervals"]))
    run.emit(fmt.dumps(bundle))
    return EXIT_OK


def cmd_verify(run: _Run) -> int:
    g, c, _ = _graph_and_coloring(run)
    a = run.args
    if a.mode == "linear":
        w = verify_linear(g, c, a.budget_nodes, stats=run.stats)
    else:
        w = verify_centered(g, c)
    ok = w is None
    run.verdict = a.mode if ok else f"not-{a.mode}"
    run.stats["colors"] = c.size
    run.emit(fmt.dumps({"mode": a.mode, "verdict": ok, "colors": c.size, "witness": fmt.witness_to_json(w)}))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_exact(run: _Run) -> int:
    g, _, _ = _graph_and_coloring(run, need_coloring=False)
    a = run.args
    out: dict[str, Any] = {"what": a.what}
    if a.what == "treedepth":
        depth, t = treedepth_exact(g, a.budget_nodes)
        out.update(value=depth, decomposition=fmt.decomposition_to_json(t),
                   coloring=fmt.coloring_to_json(canonical_coloring(t)))
    elif a.what == "chi-lin":
        k, c = chi_lin_exact(g, a.budget_nodes)
        out.update(value=k, coloring=fmt.coloring_to_json(c))
    else:
        k, c = chi_cen_exact(g, a.budget_nodes)
        out.update(value=k, coloring=fmt.coloring_to_json(c))
    run.stats.update(n=g.n, value=out["value"])
    run.verdict = f"{a.what}={out['value']}"
    run.emit(fmt.dumps(out))
    return EXIT_OK


def cmd_rank(run: _Run) -> int:
    g, _, _ = _graph_and_coloring(run, need_coloring=False)
    a = run.args
    if a.root is not None and not 0 <= a.root < g.n:
        raise UsageError(f"--root {a.root} out of range for n={g.n}")
    trace: list | None = [] if a.trace else None
    r = schaffer_rank(g, a.root, trace)
    out: dict[str, Any] = {
        "root": r.root,
        "size": r.size,
        "rank": list(r.rank),
        "lists": [list(lst) for lst in r.lists],
        "parent": list(r.parent),
    }
    if trace is not None:
        out["trace"] = [
            {"vertex": s.vertex, "child_lists": [list(x) for x in s.child_lists], "x": s.x,
             "rank": s.rank, "rank_list": list(s.rank_list)}
            for s in trace
        ]
    run.stats.update(n=g.n, colors=r.size)
    run.verdict = f"rank={r.size}"
    run.emit(fmt.dumps(out))
    return EXIT_OK


def cmd_decompose(run: _Run) -> int:
    a = run.args
    text = run.read(a.intervals)
    c = None
    if text.lstrip().startswith("{"):
        d = fmt.parse_json(text, "intervals")
        if not isinstance(d, dict) or "intervals" not in d:
            raise fmt.FormatError("JSON input carries no 'intervals'")
        rep = fmt.read_intervals("".join(f"{l} {r}\n" for l, r in d["intervals"]))
        if "coloring" in d:
            c = fmt.coloring_from_json(d["coloring"])
    else:
        rep = fmt.read_intervals(text)
    if a.coloring:
        c = fmt.read_coloring_text(run.read(a.coloring))
    if c is None:
        raise fmt.FormatError("no coloring given (use --coloring or pipe a bundle)")
    g = rep.graph()
    try:
        c.check_total(g)
    except ValueError as exc:
        raise fmt.FormatError(str(exc)) from None
    try:
        res = centered_from_linear(g, rep, c)
    except NotLinear as exc:
        run.verdict = "not-linear"
        run.emit(fmt.dumps({"error": str(exc)}))
        return EXIT_NEGATIVE
    report = res.report()
    run.stats.update(n=g.n, **report)
    run.verdict = "decomposed"
    out = {"decomposition": fmt.decomposition_to_json(res.decomposition),
           "coloring": fmt.coloring_to_json(res.coloring), **report}
    run.emit(fmt.dumps(out))
    return EXIT_OK


def cmd_reduce(run: _Run) -> int:
    f = parse_dimacs(run.read(run.args.cnf))
    pre = preprocess(f)
    info = {
        "original_n_vars": f.n_vars,
        "var_map": list(pre.var_map),
        "forced": {str(v): b for v, b in sorted(pre.forced.items())},
        "removed_clauses": list(pre.removed),
        "reduced_cnf": pre.formula.to_dimacs(),
    }
    run.stats.update(n_vars=pre.formula.n_vars, clauses=pre.formula.m)
    if pre.has_empty_clause:
        run.verdict = "unsat"
        run.emit(fmt.dumps({"route": "empty-clause", "satisfiable": False, "preprocess": info}))
        return EXIT_NEGATIVE
    if pre.formula.m == 0:
        run.verdict = "sat"
        run.emit(fmt.dumps({"route": "no-clauses", "satisfiable": True, "preprocess": info,
                            "assignment": list(pre.lift([]))}))
        return EXIT_OK
    gi = build_gadget(pre.formula)
    lengths = sum(len(p) for p in gi.true_paths + gi.false_paths)
    meta = {
        "family": "sat-gadget",
        "params": {"n": pre.formula.n_vars, "m": pre.formula.m, "L": lengths},
        "roles": gi.roles(),
        "preprocess": info,
    }
    run.stats.update(vertices=gi.graph.n, edges=gi.graph.m)
    run.verdict = "reduced"
    run.emit(fmt.dumps(fmt.make_bundle(gi.graph, gi.coloring, meta, route="gadget", psi=list(gi.psi))))
    return EXIT_OK


def _decode_assignment(meta: dict, vertices: list[int]) -> dict | None:
    roles = meta.get("roles", {})
    if meta.get("family") != "sat-gadget" or "P_T" not in roles:
        return None
    on = set(vertices)
    reduced = [set(pt) <= on and not set(pf) & on for pt, pf in zip(roles["P_T"], roles["P_F"])]
    out: dict[str, Any] = {"assignment": reduced}
    pre = meta.get("preprocess")
    if pre:
        full = [False] * pre["original_n_vars"]
        for v, b in pre["forced"].items():
            full[int(v) - 1] = b
        for i, v in enumerate(pre["var_map"]):
            full[v - 1] = reduced[i]
        out["original_assignment"] = full
    return out


def cmd_search(run: _Run) -> int:
    g, c, bundle = _graph_and_coloring(run)
    w = verify_linear(g, c, run.args.budget_nodes, stats=run.stats)
    run.stats.update(n=g.n, m=g.m)
    out: dict[str, Any] = {"stats": dict(run.stats)}
    if w is None:
        out["certificate"] = "none"
        run.verdict = "none"
        run.emit(fmt.dumps(out))
        return EXIT_NEGATIVE
    out["certificate"] = fmt.witness_to_json(w)
    decoded = _decode_assignment(bundle.get("metadata", {}), list(w.vertices))
    if decoded:
        out.update(decoded)
    run.verdict = "found"
    run.emit(fmt.dumps(out))
    return EXIT_OK


def cmd_convert(run: _Run) -> int:
    g, c, _ = _graph_and_coloring(run, need_coloring=False)
    a = run.args
    if a.to == "edgelist":
        text = fmt.write_edge_list(g)
    elif a.to == "dot":
        text = fmt.write_dot(g, c)
    else:
        text = fmt.dumps(fmt.make_bundle(g, c) if c is not None else fmt.graph_to_json(g))
    run.stats.update(n=g.n, m=g.m)
    run.emit(text)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed (default %(default)s)")
    common.add_argument("--budget-nodes", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--budget-ms", type=int, default=None, help="wall-clock budget in milliseconds")
    common.add_argument("--out", default=None, help="write data here instead of stdout")

    p = _Parser(prog="lincolor", description="Linear and centered colorings, treedepth and friends.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="generate an instance bundle")
    gen.add_argument("family", choices=["rclique", "btree", "random-tree", "random-interval"])
    gen.add_argument("--i", type=int, default=3, help="rclique order")
    gen.add_argument("--levels", type=int, default=3, help="btree levels")
    gen.add_argument("--stripe-a", type=int, default=None, help="btree stripe height for the striped coloring")
    gen.add_argument("--n", type=int, default=10, help="vertices for random families")
    gen.add_argument("--span", type=int, default=None, help="endpoint range for random intervals (default 2n)")
    gen.add_argument("--split-dir", default=None, help="also write graph.el, coloring.json, metadata.json here")
    gen.set_defaults(func=cmd_gen)

    for name, func, helptext in (
        ("verify", cmd_verify, "check a coloring"),
        ("search-nclc", cmd_search, "search for a path without a center"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--graph", default=None, help="edge list, DOT, graph JSON or bundle (default stdin)")
        sp.add_argument("--coloring", default=None, help="coloring JSON (default: from the bundle)")
        if name == "verify":
            sp.add_argument("--mode", choices=["linear", "centered"], default="linear")
        sp.set_defaults(func=func)

    ex = sub.add_parser("exact", parents=[common], help="exact treedepth or coloring numbers")
    ex.add_argument("--graph", default=None)
    ex.add_argument("--what", choices=["treedepth", "chi-lin", "chi-cen"], default="treedepth")
    ex.set_defaults(func=cmd_exact)

    rk = sub.add_parser("rank", parents=[common], help="optimal vertex ranking of a tree")
    rk.add_argument("--graph", default=None)
    rk.add_argument("--root", type=int, default=None)
    rk.add_argument("--trace", action="store_true", help="include merge steps")
    rk.set_defaults(func=cmd_rank)

    de = sub.add_parser("decompose", parents=[common], help="interval graph: linear coloring to decomposition")
    de.add_argument("--intervals", default=None, help="interval file or bundle with intervals (default stdin)")
    de.add_argument("--coloring", default=None)
    de.set_defaults(func=cmd_decompose)

    rd = sub.add_parser("reduce", parents=[common], help="CNF to non-centered path instance")
    rd.add_argument("--cnf", default=None, help="DIMACS file (default stdin)")
    rd.set_defaults(func=cmd_reduce)

    cv = sub.add_parser("convert", parents=[common], help="convert between graph formats")
    cv.add_argument("--graph", default=None)
    cv.add_argument("--coloring", default=None)
    cv.add_argument("--to", choices=["edgelist", "dot", "json"], required=True)
    cv.set_defaults(func=cmd_convert)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    start = time.perf_counter()
    run: _Run | None = None
    error = None
    try:
        args = build_parser().parse_args(argv)
        run = _Run(args)
        with _deadline(args.budget_ms):
            code = args.func(run)
    except UsageError as exc:
        code, error = EXIT_USAGE, str(exc)
    except (fmt.FormatError, DimacsError, NotATree, PreconditionError) as exc:
        code, error = EXIT_USAGE, f"{type(exc).__name__}: {exc}"
    except BudgetExceeded as exc:
        code, error = EXIT_BUDGET, str(exc)
    except ValueError as exc:
        code, error = EXIT_USAGE, f"invalid input: {exc}"
    if error is not None:
        sys.stderr.write(f"lincolor: error: {error}\n".replace("\n", " ").rstrip() + "\n")
    report = {
        "subcommand": run.args.command if run else (argv[0] if argv else None),
        "inputs_digest": run.digest.hexdigest() if run else None,
        "verdict": {EXIT_USAGE: "usage-error", EXIT_BUDGET: "budget-exceeded"}.get(code, run.verdict if run else None),
        "exit_code": code,
        "stats": run.stats if run else {},
        "wall_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    sys.stderr.write(json.dumps(report, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
