"""Exact solver over (vertex, set of activated deletion types) states.

Vertices with the same deletion set share a type.  Visiting a vertex
activates its type; an edge is usable while no active type deletes it.  BFS
over these states is exponential only in the number of distinct deletion
sets, and the BFS distance to t is the shortest conforming path length.
"""
from __future__ import annotations

from collections import OrderedDict, deque
from dataclasses import dataclass

from .core import (
    Instance,
    PathCertificate,
    SelfDeletingGraph,
    SolveOutcome,
    shorten_walk,
    trivial_outcome,
)


@dataclass(frozen=True)
class TypeIndex:
    type_of: tuple[int, ...]  # type_of[v - 1] in 1..kD
    sets: tuple[frozenset[int], ...]  # sets[i - 1] = D_i

    @property
    def kd(self) -> int:
        return len(self.sets)


def build_type_index(graph: SelfDeletingGraph) -> TypeIndex:
    """Number distinct deletion sets by first occurrence in vertex order."""
    index: dict[frozenset[int], int] = {}
    type_of = []
    for dels in graph.deletions:
        if dels not in index:
            index[dels] = len(index) + 1
        type_of.append(index[dels])
    sets = tuple(sorted(index, key=index.__getitem__))
    return TypeIndex(tuple(type_of), sets)


class _BlockedCache:
    """Blocked-edge sets per type mask, built incrementally, LRU-bounded."""

    def __init__(self, types: TypeIndex, capacity: int = 4096):
        self.types = types
        self.capacity = capacity
        self.data: OrderedDict[int, frozenset[int]] = OrderedDict()

    def get(self, mask: int, parent: int | None = None) -> frozenset[int]:
        hit = self.data.get(mask)
        if hit is not None:
            self.data.move_to_end(mask)
            return hit
        base: frozenset[int] = frozenset()
        new_bits = mask
        if parent is not None and parent & ~mask == 0:
            cached = self.data.get(parent)
            if cached is not None:
                base, new_bits = cached, mask & ~parent
        blocked = set(base)
        while new_bits:
            low = new_bits & -new_bits
            blocked.update(self.types.sets[low.bit_length() - 1])
            new_bits ^= low
        result = frozenset(blocked)
        self.data[mask] = result
        if len(self.data) > self.capacity:
            self.data.popitem(last=False)
        return result


def solve_statespace(instance: Instance, max_types: int = 24) -> SolveOutcome:
    """BFS from (s, {type(s)}); answers both existence and shortest queries."""
    trivial = trivial_outcome(instance)
    if trivial is not None:
        return trivial
    g, s, t = instance.graph, instance.s, instance.t
    types = build_type_index(g)
    if types.kd > max_types:
        return SolveOutcome.inconclusive(
            f"state space too large: {types.kd} deletion types > budget {max_types}"
        )
    bit = [0] + [1 << (types.type_of[v - 1] - 1) for v in range(1, g.n + 1)]
    cache = _BlockedCache(types)
    start = (s, bit[s])
    parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    depth = {start: 1}
    limit = instance.max_vertices
    queue = deque([start])
    goal = None
    while queue and goal is None:
        state = queue.popleft()
        u, mask = state
        if limit is not None and depth[state] >= limit:
            continue
        blocked = cache.get(mask)
        for w, e in g.adjacency[u]:
            if e in blocked:
                continue
            nxt = (w, mask | bit[w])
            if nxt in parent:
                continue
            parent[nxt] = (state, e)
            depth[nxt] = depth[state] + 1
            if w == t:
                goal = nxt
                break
            queue.append(nxt)
            cache.get(nxt[1], mask)
    if goal is None:
        return SolveOutcome.no("statespace: t unreachable in state graph")
    verts, edges = [goal[0]], []
    cur = goal
    while parent[cur] is not None:
        prev, e = parent[cur]
        edges.append(e)
        verts.append(prev[0])
        cur = prev
    walk = PathCertificate(tuple(reversed(verts)), tuple(reversed(edges)))
    return SolveOutcome.yes(shorten_walk(g, walk), "statespace")
