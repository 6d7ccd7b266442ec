"""The SDG text format and path files.

    # comment
    p sdg <n> <m>
    e <u> <v>            (exactly m lines, edge i is the i-th)
    d <v> <e1> <e2> ...  (any number, cumulative per vertex)
    t <s> <t> [k]
"""
from __future__ import annotations

from .core import Instance, PathCertificate, SelfDeletingGraph, validate


class SDGParseError(ValueError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise SDGParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse_sdg(text: str) -> Instance:
    n = m = None
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    dels: dict[int, set[int]] = {}
    del_lines: dict[int, int] = {}
    terminals = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "p":
            if n is not None:
                raise SDGParseError(lineno, "duplicate header")
            if len(rest) != 3 or rest[0] != "sdg":
                raise SDGParseError(lineno, "header must be 'p sdg <n> <m>'")
            n, m = _ints(rest[1:], lineno)
            if n < 1 or m < 0:
                raise SDGParseError(lineno, "need n >= 1 and m >= 0")
            continue
        if n is None or m is None:
            raise SDGParseError(lineno, "content before 'p sdg' header")
        if tag == "e":
            if len(rest) != 2:
                raise SDGParseError(lineno, "edge line must be 'e <u> <v>'")
            if len(edges) >= m:
                raise SDGParseError(lineno, f"more than {m} edge lines")
            u, v = _ints(rest, lineno)
            edges.append((u, v))
            edge_lines.append(lineno)
        elif tag == "d":
            if not rest:
                raise SDGParseError(lineno, "deletion line needs a vertex")
            v, *es = _ints(rest, lineno)
            if not 1 <= v <= n:
                raise SDGParseError(lineno, f"vertex {v} out of range 1..{n}")
            for e in es:
                if not 1 <= e <= m:
                    raise SDGParseError(lineno, f"edge {e} out of range 1..{m}")
            dels.setdefault(v, set()).update(es)
            del_lines.setdefault(v, lineno)
        elif tag == "t":
            if terminals is not None:
                raise SDGParseError(lineno, "duplicate terminal line")
            if len(rest) not in (2, 3):
                raise SDGParseError(lineno, "terminal line must be 't <s> <t> [k]'")
            vals = _ints(rest, lineno)
            for x in vals[:2]:
                if not 1 <= x <= n:
                    raise SDGParseError(lineno, f"terminal {x} out of range 1..{n}")
            if len(vals) == 3 and vals[2] < 1:
                raise SDGParseError(lineno, "k must be positive")
            terminals = (vals[0], vals[1], vals[2] if len(vals) == 3 else None, lineno)
        else:
            raise SDGParseError(lineno, f"unknown line type {tag!r}")
    if n is None or m is None:
        raise SDGParseError(None, "missing 'p sdg' header")
    if len(edges) != m:
        raise SDGParseError(None, f"expected {m} edge lines, found {len(edges)}")
    if terminals is None:
        raise SDGParseError(None, "missing terminal line 't <s> <t> [k]'")
    graph = SelfDeletingGraph.build(n, edges, dels)
    problems = validate(graph)
    if problems:
        # point at the edge line when the message names one
        first = problems[0]
        where = None
        if first.startswith("edge "):
            idx = int(first.split()[1])
            where = edge_lines[idx - 1]
        raise SDGParseError(where, "; ".join(problems))
    s, t, k, _ = terminals
    return Instance(graph, s, t, k)


def write_sdg(instance: Instance, comment: str | None = None) -> str:
    g = instance.graph
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p sdg {g.n} {g.m}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    for v in range(1, g.n + 1):
        if g.f(v):
            lines.append("d " + " ".join(map(str, [v, *sorted(g.f(v))])))
    tail = f"t {instance.s} {instance.t}"
    if instance.max_vertices is not None:
        tail += f" {instance.max_vertices}"
    lines.append(tail)
    return "\n".join(lines) + "\n"


def parse_path(text: str, graph: SelfDeletingGraph) -> PathCertificate:
    """Whitespace-separated vertex ids; a leading 'PATH' token is allowed."""
    tokens = text.split("#", 1)[0].split() if "#" in text else text.split()
    if tokens and tokens[0].upper() == "PATH":
        tokens = tokens[1:]
    if not tokens:
        raise ValueError("empty path file")
    verts = [int(x) for x in tokens]
    for v in verts:
        if not 1 <= v <= graph.n:
            raise ValueError(f"vertex {v} out of range 1..{graph.n}")
    return PathCertificate.from_vertices(graph, verts)
