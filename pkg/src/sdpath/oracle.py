"""Brute-force reference solver: exhaustive DFS over simple s-t paths.

Slow by design.  Every other solver is checked against this module.
"""
from __future__ import annotations

import time
from typing import Iterator

from .core import Instance, PathCertificate, SolveOutcome, bfs_distances, trivial_outcome


class _Deadline(Exception):
    pass


def _walk_paths(instance: Instance, deadline: float | None = None) -> Iterator[PathCertificate]:
    """Yield every f-conforming simple s-t path in deterministic DFS order.

    ``deleted[e]`` counts how many visited vertices delete e, so undoing a
    step is a decrement rather than a set rebuild.
    """
    g, s, t = instance.graph, instance.s, instance.t
    cap = instance.max_vertices
    if s == t:
        yield PathCertificate((s,))
        return
    deleted = [0] * (g.m + 1)
    on_path = [False] * (g.n + 1)
    verts = [s]
    edges: list[int] = []
    ticks = 0

    def enter(v: int) -> None:
        on_path[v] = True
        for e in g.f(v):
            deleted[e] += 1

    def leave(v: int) -> None:
        on_path[v] = False
        for e in g.f(v):
            deleted[e] -= 1

    enter(s)
    # explicit stack of neighbor iterators keeps deep paths off the C stack
    stack = [iter(g.adjacency[s])]
    while stack:
        if deadline is not None:
            ticks += 1
            if ticks & 1023 == 0 and time.monotonic() > deadline:
                raise _Deadline
        advanced = False
        for w, e in stack[-1]:
            if on_path[w] or deleted[e]:
                continue
            if w == t:
                yield PathCertificate(tuple(verts) + (t,), tuple(edges) + (e,))
                continue
            if cap is not None and len(verts) + 2 > cap:
                continue
            enter(w)
            verts.append(w)
            edges.append(e)
            stack.append(iter(g.adjacency[w]))
            advanced = True
            break
        if not advanced:
            stack.pop()
            leave(verts.pop())
            if edges:
                edges.pop()


def oracle_enumerate(instance: Instance, limit: int | None = None) -> list[PathCertificate]:
    """All f-conforming s-t paths (at most ``max_vertices`` long if set)."""
    out: list[PathCertificate] = []
    if instance.max_vertices is not None and instance.s != instance.t and instance.max_vertices < 2:
        return out
    for cert in _walk_paths(instance):
        out.append(cert)
        if limit is not None and len(out) >= limit:
            break
    return out


def oracle_exists(instance: Instance, deadline: float | None = None) -> SolveOutcome:
    """Yes with the first path found, else No.

    ``deadline`` (a ``time.monotonic`` value) turns an overlong search into
    Inconclusive; without it the answer is always definite.
    """
    if instance.max_vertices is not None and instance.s != instance.t and instance.max_vertices < 2:
        return SolveOutcome.no("budget below 2 vertices")
    try:
        for cert in _walk_paths(instance, deadline):
            return SolveOutcome.yes(cert, "oracle")
    except _Deadline:
        return SolveOutcome.inconclusive("oracle time budget exhausted")
    return SolveOutcome.no("oracle: no conforming path")


def oracle_shortest(instance: Instance, deadline: float | None = None) -> SolveOutcome:
    """Minimum-vertex conforming path by branch and bound.

    A branch is cut when its length plus the plain BFS distance to t (a
    lower bound that ignores f) cannot beat the best path found so far.
    """
    trivial = trivial_outcome(instance)
    if trivial is not None:
        return trivial
    g, s, t = instance.graph, instance.s, instance.t
    dist_t = bfs_distances(g, t)
    if dist_t[s] is None:
        return SolveOutcome.no("t unreachable")
    bound = instance.max_vertices if instance.max_vertices is not None else g.n
    best: list[int] | None = None
    best_edges: list[int] | None = None

    deleted = [0] * (g.m + 1)
    on_path = [False] * (g.n + 1)
    verts = [s]
    edges: list[int] = []
    ticks = 0

    def toggle(v: int, d: int) -> None:
        on_path[v] = d > 0
        for e in g.f(v):
            deleted[e] += d

    toggle(s, 1)
    stack = [iter(g.adjacency[s])]
    try:
        while stack:
            if deadline is not None:
                ticks += 1
                if ticks & 1023 == 0 and time.monotonic() > deadline:
                    raise _Deadline
            advanced = False
            for w, e in stack[-1]:
                if on_path[w] or deleted[e]:
                    continue
                dw = dist_t[w]
                # vertices the path would have through w, at minimum
                if dw is None or len(verts) + 1 + dw > bound:
                    continue
                if w == t:
                    best = verts + [t]
                    best_edges = edges + [e]
                    bound = len(best) - 1
                    continue
                toggle(w, 1)
                verts.append(w)
                edges.append(e)
                stack.append(iter(g.adjacency[w]))
                advanced = True
                break
            if not advanced:
                stack.pop()
                toggle(verts.pop(), -1)
                if edges:
                    edges.pop()
    except _Deadline:
        return SolveOutcome.inconclusive("oracle time budget exhausted")
    if best is None:
        return SolveOutcome.no("oracle: no conforming path within budget")
    return SolveOutcome.yes(PathCertificate(tuple(best), tuple(best_edges or ())), "oracle-shortest")
