"""Text and JSON formats: edge lists, DOT, colorings, witnesses,
decompositions, interval files and the instance bundle used for piping."""

from __future__ import annotations

import json
import re
from typing import Any

from .colorings import CenteredWitness, Coloring, NonCenteredPath
from .graph import Graph
from .interval import IntervalRepresentation
from .treedepth import TreedepthDecomposition


class FormatError(ValueError):
    pass


def _ints(line: str, lineno: int, k: int) -> list[int]:
    parts = line.split()
    if len(parts) != k:
        raise FormatError(f"line {lineno}: expected {k} integers, got {line.strip()!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {line.strip()!r}") from None


def _content_lines(text: str) -> list[tuple[int, str]]:
    return [(i, s) for i, s in enumerate(text.splitlines(), 1) if s.strip() and not s.lstrip().startswith("#")]


# -- graphs ---------------------------------------------------------------------------


def write_edge_list(g: Graph) -> str:
    return "".join([f"{g.n} {g.m}\n"] + [f"{u} {v}\n" for u, v in g.sorted_edges()])


def read_edge_list(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty edge list")
    n, m = _ints(lines[0][1], lines[0][0], 2)
    if len(lines) - 1 != m:
        raise FormatError(f"header declares {m} edges, found {len(lines) - 1}")
    edges = []
    for lineno, line in lines[1:]:
        u, v = _ints(line, lineno, 2)
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"line {lineno}: bad edge ({u}, {v}) for n={n}")
        edges.append((u, v))
    g = Graph(n, edges)
    if g.m != m:
        raise FormatError("edge list contains duplicate edges")
    return g


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(d: Any) -> Graph:
    try:
        n = int(d["n"])
        edges = [(int(u), int(v)) for u, v in d["edges"]]
    except (KeyError, TypeError, ValueError):
        raise FormatError("graph JSON needs 'n' and 'edges' as [[u, v], ...]") from None
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_dot(g: Graph, c: Coloring | None = None) -> str:
    """Undirected DOT; with a coloring each vertex gets ``color`` from the
    12-class paired scheme and a ``v:c`` label."""
    out = ["graph G {"]
    if c is not None:
        out.append('  node [colorscheme=paired12, style=filled];')
    for v in range(g.n):
        if c is None:
            out.append(f"  {v};")
        else:
            out.append(f'  {v} [label="{v}:{c[v]}", color={(c[v] - 1) % 12 + 1}, lincolor={c[v]}];')
    out += [f"  {u} -- {v};" for u, v in g.sorted_edges()]
    out.append("}")
    return "\n".join(out) + "\n"


_DOT_NODE = re.compile(r"^\s*(\d+)\s*(\[(.*)\])?\s*;?\s*$")
_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*;?\s*$")
_DOT_COLOR = re.compile(r"lincolor\s*=\s*(\d+)")


def read_dot(text: str) -> tuple[Graph, Coloring | None]:
    """Reads the subset written by :func:`write_dot`."""
    nodes: dict[int, int | None] = {}
    edges = []
    body = text.strip()
    if not body.startswith("graph") or not body.endswith("}"):
        raise FormatError("expected an undirected 'graph { ... }' DOT document")
    for lineno, line in enumerate(body.splitlines()[1:-1], 2):
        if not line.strip() or line.strip().startswith("node "):
            continue
        if m := _DOT_EDGE.match(line):
            edges.append((int(m[1]), int(m[2])))
        elif m := _DOT_NODE.match(line):
            col = _DOT_COLOR.search(m[3] or "")
            nodes[int(m[1])] = int(col[1]) if col else None
        else:
            raise FormatError(f"line {lineno}: unsupported DOT statement {line.strip()!r}")
    n = max([*nodes, *(max(e) for e in edges)], default=-1) + 1
    if sorted(nodes) != list(range(len(nodes))) or len(nodes) not in (0, n):
        raise FormatError("DOT vertices must be 0..n-1, each declared once")
    g = Graph(n, edges)
    cols = [nodes.get(v) for v in range(n)]
    if n and all(x is not None for x in cols):
        return g, Coloring(cols)
    return g, None


# -- colorings, witnesses, decompositions --------------------------------------------------


def coloring_to_json(c: Coloring, offset: int = 0) -> dict:
    d: dict[str, Any] = {"n": c.n, "colors": list(c.colors)}
    if offset:
        d["offset"] = offset
    return d


def coloring_from_json(d: Any) -> Coloring:
    try:
        colors = [int(x) for x in d["colors"]]
        n = int(d.get("n", len(colors)))
    except (KeyError, TypeError, ValueError, AttributeError):
        raise FormatError("coloring JSON needs 'colors' as a list of integers") from None
    if n != len(colors):
        raise FormatError(f"coloring declares n={n} but lists {len(colors)} colors")
    try:
        return Coloring(colors)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def witness_to_json(w: CenteredWitness | NonCenteredPath | None) -> dict | None:
    if w is None:
        return None
    vs = sorted(w.vertices) if isinstance(w, CenteredWitness) else list(w.vertices)
    return {"kind": w.kind, "vertices": vs}


def decomposition_to_json(t: TreedepthDecomposition) -> dict:
    return {"n": len(t.parent), "parent": list(t.parent)}


def decomposition_from_json(d: Any) -> TreedepthDecomposition:
    try:
        parent = [int(x) for x in d["parent"]]
    except (KeyError, TypeError, ValueError):
        raise FormatError("decomposition JSON needs 'parent' as a list of integers") from None
    try:
        return TreedepthDecomposition(parent)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# -- intervals -------------------------------------------------------------------------


def write_intervals(rep: IntervalRepresentation) -> str:
    return "".join(f"{a} {b}\n" for a, b in rep.intervals)


def read_intervals(text: str) -> IntervalRepresentation:
    ivs = []
    for i, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        ivs.append(_ints(line, i, 2))
    try:
        return IntervalRepresentation(ivs)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# -- bundles ---------------------------------------------------------------------------


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, trailing newline)."""
    return json.dumps(obj, sort_keys=True) + "\n"


def make_bundle(g: Graph, c: Coloring | None = None, metadata: dict | None = None, **extra) -> dict:
    """One JSON document carrying a graph, optionally its coloring and
    metadata; what ``gen`` and ``reduce`` print so commands can be piped."""
    b: dict[str, Any] = {"graph": graph_to_json(g)}
    if c is not None:
        b["coloring"] = coloring_to_json(c, (metadata or {}).get("roles", {}).get("color_offset", 0))
    if metadata is not None:
        b["metadata"] = metadata
    b.update(extra)
    return b


def parse_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def read_graph_text(text: str) -> tuple[Graph, Coloring | None, dict]:
    """Graph from an edge list, DOT, graph JSON or bundle; also returns the
    coloring and metadata a bundle or colored DOT carries."""
    s = text.lstrip()
    if s.startswith("{"):
        d = parse_json(text, "graph")
        if isinstance(d, dict) and "graph" in d:
            g = graph_from_json(d["graph"])
            c = coloring_from_json(d["coloring"]) if "coloring" in d else None
            return g, c, d
        return graph_from_json(d), None, {}
    if s.startswith("graph"):
        g, c = read_dot(text)
        return g, c, {}
    return read_edge_list(text), None, {}


def read_coloring_text(text: str) -> Coloring:
    d = parse_json(text, "coloring")
    if isinstance(d, dict) and "graph" in d:
        if "coloring" not in d:
            raise FormatError("bundle has no coloring")
        d = d["coloring"]
    return coloring_from_json(d)


def load_schema(name: str) -> dict:
    """JSON schema shipped with the package, e.g. ``load_schema("verify")``."""
    from importlib.resources import files

    return json.loads(files("lincolor").joinpath("schemas", f"{name}.json").read_text())
