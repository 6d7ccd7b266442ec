"""Feedback edge number tools: spanning forest, s-t path enumeration, solver.

A graph with feedback edge number fen has at most 2^fen simple s-t paths, so
checking each one for conformity is an exact solver when fen is small.
"""
from __future__ import annotations

from typing import Iterator

from .core import (
    Instance,
    PathCertificate,
    SelfDeletingGraph,
    SolveOutcome,
    is_f_conforming,
    trivial_outcome,
)


class PathCapExceeded(RuntimeError):
    """Raised when an enumeration would produce more paths than allowed."""


def feedback_edges(graph: SelfDeletingGraph) -> tuple[frozenset[int], frozenset[int]]:
    """(forest edges, feedback edges) of a DFS forest rooted at 1, 2, ... in order."""
    seen = [False] * (graph.n + 1)
    tree: set[int] = set()
    for root in range(1, graph.n + 1):
        if seen[root]:
            continue
        seen[root] = True
        stack = [iter(graph.adjacency[root])]
        while stack:
            for w, e in stack[-1]:
                if not seen[w]:
                    seen[w] = True
                    tree.add(e)
                    stack.append(iter(graph.adjacency[w]))
                    break
            else:
                stack.pop()
    rest = frozenset(range(1, graph.m + 1)) - tree
    return frozenset(tree), rest


def feedback_edge_number(graph: SelfDeletingGraph) -> int:
    return len(feedback_edges(graph)[1])


def iter_st_paths(graph: SelfDeletingGraph, s: int, t: int) -> Iterator[PathCertificate]:
    """Every simple s-t path, ignoring f, in ascending-edge DFS order."""
    if s == t:
        yield PathCertificate((s,))
        return
    on_path = [False] * (graph.n + 1)
    on_path[s] = True
    verts, edges = [s], []
    stack = [iter(graph.adjacency[s])]
    while stack:
        for w, e in stack[-1]:
            if on_path[w]:
                continue
            if w == t:
                yield PathCertificate(tuple(verts) + (t,), tuple(edges) + (e,))
                continue
            on_path[w] = True
            verts.append(w)
            edges.append(e)
            stack.append(iter(graph.adjacency[w]))
            break
        else:
            stack.pop()
            on_path[verts.pop()] = False
            if edges:
                edges.pop()


def enumerate_st_paths(
    graph: SelfDeletingGraph, s: int, t: int, cap: int | None = None
) -> list[PathCertificate]:
    out = []
    for cert in iter_st_paths(graph, s, t):
        if cap is not None and len(out) >= cap:
            raise PathCapExceeded(f"more than {cap} s-t paths")
        out.append(cert)
    return out


def solve_fen(instance: Instance, fen_budget: int = 20) -> SolveOutcome:
    trivial = trivial_outcome(instance)
    if trivial is not None:
        return trivial
    g = instance.graph
    fen = feedback_edge_number(g)
    if fen > fen_budget:
        return SolveOutcome.inconclusive(f"fen {fen} exceeds budget {fen_budget}")
    limit = instance.max_vertices
    best: PathCertificate | None = None
    for cert in iter_st_paths(g, instance.s, instance.t):
        if limit is not None and cert.num_vertices > limit:
            continue
        if not is_f_conforming(g, cert):
            continue
        if limit is None:
            return SolveOutcome.yes(cert, "fen")
        if best is None or cert.num_vertices < best.num_vertices:
            best = cert
    if best is None:
        return SolveOutcome.no("fen: no enumerated path conforms")
    return SolveOutcome.yes(best, "fen")
