"""Data model for self-deleting graphs: graphs, instances, certificates, outcomes.

Vertices are identified by 1..n and edges by their 1-based position in the
edge list.  A self-deleting graph pairs an undirected simple graph with a
deletion function ``f`` mapping every vertex to a set of edge indices; once a
walk has visited ``v`` the edges of ``f(v)`` may no longer be traversed.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class SelfDeletingGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    # deletions[v - 1] is f(v)
    deletions: tuple[frozenset[int], ...]

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        deletions: Mapping[int, Iterable[int]] | Sequence[Iterable[int]] | None = None,
    ) -> "SelfDeletingGraph":
        """Build a graph; ``deletions`` is a vertex->edges mapping or a per-vertex list."""
        edge_tuple = tuple((int(u), int(v)) for u, v in edges)
        sets: list[frozenset[int]] = [frozenset()] * n
        if deletions is not None:
            items = deletions.items() if isinstance(deletions, Mapping) else enumerate(deletions, start=1)
            for v, es in items:
                if not 1 <= v <= n:
                    raise ValueError(f"deletion set given for vertex {v} outside 1..{n}")
                sets[v - 1] = sets[v - 1] | frozenset(int(e) for e in es)
        return cls(n, edge_tuple, tuple(sets))

    @property
    def m(self) -> int:
        return len(self.edges)

    def f(self, v: int) -> frozenset[int]:
        return self.deletions[v - 1]

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e - 1]

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """adjacency[v] lists (neighbor, edge index) in ascending edge index; slot 0 is empty."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n + 1)]
        for idx, (u, v) in enumerate(self.edges, start=1):
            if 1 <= u <= self.n and 1 <= v <= self.n and u != v:
                adj[u].append((v, idx))
                adj[v].append((u, idx))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def _edge_lookup(self) -> dict[tuple[int, int], int]:
        lookup: dict[tuple[int, int], int] = {}
        for idx, (u, v) in enumerate(self.edges, start=1):
            lookup.setdefault((min(u, v), max(u, v)), idx)
        return lookup

    def edge_between(self, u: int, v: int) -> int | None:
        return self._edge_lookup.get((min(u, v), max(u, v)))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def mu(self) -> int:
        return max((len(d) for d in self.deletions), default=0)

    @property
    def total_f(self) -> int:
        return sum(len(d) for d in self.deletions)

    def with_deletions(self, deletions: Mapping[int, Iterable[int]]) -> "SelfDeletingGraph":
        sets = list(self.deletions)
        for v, es in deletions.items():
            sets[v - 1] = frozenset(es)
        return SelfDeletingGraph(self.n, self.edges, tuple(sets))


@dataclass(frozen=True)
class Instance:
    graph: SelfDeletingGraph
    s: int
    t: int
    max_vertices: int | None = None

    def __post_init__(self) -> None:
        n = self.graph.n
        if not (1 <= self.s <= n and 1 <= self.t <= n):
            raise ValueError(f"terminals ({self.s}, {self.t}) outside 1..{n}")
        if self.max_vertices is not None and self.max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")

    def with_budget(self, max_vertices: int | None) -> "Instance":
        return Instance(self.graph, self.s, self.t, max_vertices)


@dataclass(frozen=True)
class PathCertificate:
    vertices: tuple[int, ...]
    edges: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a certificate has at least one vertex")
        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError("need exactly one edge between consecutive vertices")

    @classmethod
    def from_vertices(cls, graph: SelfDeletingGraph, vertices: Sequence[int]) -> "PathCertificate":
        edges = []
        for u, v in zip(vertices, vertices[1:]):
            e = graph.edge_between(u, v)
            if e is None:
                raise ValueError(f"vertices {u} and {v} are not adjacent")
            edges.append(e)
        return cls(tuple(vertices), tuple(edges))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return " ".join(map(str, self.vertices))


class Status(enum.Enum):
    YES = "YES"
    NO = "NO"
    INCONCLUSIVE = "UNKNOWN"


@dataclass(frozen=True)
class SolveOutcome:
    status: Status
    certificate: PathCertificate | None = None
    reason: str = ""

    @classmethod
    def yes(cls, certificate: PathCertificate, reason: str = "") -> "SolveOutcome":
        return cls(Status.YES, certificate, reason)

    @classmethod
    def no(cls, reason: str = "") -> "SolveOutcome":
        return cls(Status.NO, None, reason)

    @classmethod
    def inconclusive(cls, reason: str) -> "SolveOutcome":
        return cls(Status.INCONCLUSIVE, None, reason)

    @property
    def is_yes(self) -> bool:
        return self.status is Status.YES

    @property
    def is_no(self) -> bool:
        return self.status is Status.NO

    @property
    def length(self) -> int | None:
        return None if self.certificate is None else self.certificate.num_vertices


def trivial_outcome(instance: Instance) -> SolveOutcome | None:
    """Outcome for s = t (the one-vertex path), else None."""
    if instance.s == instance.t:
        return SolveOutcome.yes(PathCertificate((instance.s,)), "s = t")
    return None


# ---------------------------------------------------------------------------
# validation and verification


def validate(graph: SelfDeletingGraph) -> list[str]:
    """Return every invariant violation of ``graph``; an empty list means valid."""
    errors: list[str] = []
    n, m = graph.n, graph.m
    if n < 1:
        errors.append("graph needs at least one vertex")
    if len(graph.deletions) != n:
        errors.append(f"expected {n} deletion sets, got {len(graph.deletions)}")
    seen: dict[tuple[int, int], int] = {}
    for idx, (u, v) in enumerate(graph.edges, start=1):
        if not (1 <= u <= n and 1 <= v <= n):
            errors.append(f"edge {idx} ({u}, {v}): endpoint out of range")
            continue
        if u == v:
            errors.append(f"edge {idx} ({u}, {v}): self-loop")
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            errors.append(f"edge {idx} ({u}, {v}): duplicate of edge {seen[key]}")
        else:
            seen[key] = idx
    for v, dels in enumerate(graph.deletions, start=1):
        for e in sorted(dels):
            if not 1 <= e <= m:
                errors.append(f"f({v}) = ... {e}: deletion references missing edge")
    return errors


@dataclass(frozen=True)
class Conformity:
    ok: bool
    kind: str | None = None  # "structure", "repeat" or "deleted"
    step: int | None = None  # 1-based position of the offending edge / vertex
    deleter: int | None = None  # 1-based position of the deleting vertex
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_f_conforming(
    graph: SelfDeletingGraph, walk: PathCertificate, require_simple: bool = False
) -> Conformity:
    """Check e_i not in f(v_j) for all j <= i, in O(n + m + |f|).

    Structural problems (non-adjacent vertices, wrong edge index) are reported
    with kind "structure", repeated vertices with kind "repeat", and
    conformity violations with kind "deleted" and both positions.
    """
    vs, es = walk.vertices, walk.edges
    for pos, v in enumerate(vs, start=1):
        if not 1 <= v <= graph.n:
            return Conformity(False, "structure", pos, None, f"vertex {v} out of range")
    for i, e in enumerate(es, start=1):
        if not 1 <= e <= graph.m:
            return Conformity(False, "structure", i, None, f"edge {e} out of range")
        a, b = graph.endpoints(e)
        if {a, b} != {vs[i - 1], vs[i]}:
            return Conformity(
                False, "structure", i, None, f"edge {e} does not join {vs[i - 1]} and {vs[i]}"
            )
    if require_simple:
        first: dict[int, int] = {}
        for pos, v in enumerate(vs, start=1):
            if v in first:
                return Conformity(False, "repeat", pos, first[v], f"vertex {v} repeated")
            first[v] = pos
    deleted_by: dict[int, int] = {}
    for i, e in enumerate(es, start=1):
        for d in graph.f(vs[i - 1]):
            deleted_by.setdefault(d, i)
        j = deleted_by.get(e)
        if j is not None:
            return Conformity(
                False, "deleted", i, j, f"edge {e} (step {i}) deleted by vertex {vs[j - 1]} (position {j})"
            )
    return Conformity(True)


def shorten_walk(graph: SelfDeletingGraph, walk: PathCertificate) -> PathCertificate:
    """Excise loops from an f-conforming walk, giving a conforming path.

    Kept edges and kept vertices are order-preserving subsequences of the
    walk, so every kept edge is preceded by a subset of its original
    predecessors and the result stays conforming.
    """
    check = is_f_conforming(graph, walk)
    if not check:
        raise ValueError(f"walk is not f-conforming: {check.message}")
    verts: list[int] = [walk.vertices[0]]
    edges: list[int] = []
    where = {walk.vertices[0]: 0}
    for e, v in zip(walk.edges, walk.vertices[1:]):
        if v in where:
            cut = where[v]
            for dropped in verts[cut + 1:]:
                del where[dropped]
            del verts[cut + 1:]
            del edges[cut:]
        else:
            where[v] = len(verts)
            verts.append(v)
            edges.append(e)
    return PathCertificate(tuple(verts), tuple(edges))


# ---------------------------------------------------------------------------
# statistics and subgraphs


def component_labels(graph: SelfDeletingGraph) -> list[int]:
    """Component id per vertex (index 0 unused), numbered from 1 in vertex order."""
    label = [0] * (graph.n + 1)
    current = 0
    for root in range(1, graph.n + 1):
        if label[root]:
            continue
        current += 1
        label[root] = current
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, _ in graph.adjacency[u]:
                if not label[w]:
                    label[w] = current
                    queue.append(w)
    return label


def bfs_distances(graph: SelfDeletingGraph, source: int) -> list[int | None]:
    """Plain hop distances from ``source`` ignoring f; index 0 unused."""
    dist: list[int | None] = [None] * (graph.n + 1)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w, _ in graph.adjacency[u]:
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


@dataclass(frozen=True)
class InstanceStats:
    n: int
    m: int
    mu: int
    total_f: int
    distinct_deletion_sets: int
    fen: int
    is_cactus: bool
    universal_source: bool
    connected: bool

    def as_dict(self) -> dict[str, int | bool]:
        return dict(self.__dict__)


def stats(graph: SelfDeletingGraph, s: int, t: int) -> InstanceStats:
    from .cactus import is_cactus
    from .fen import feedback_edge_number

    labels = component_labels(graph)
    return InstanceStats(
        n=graph.n,
        m=graph.m,
        mu=graph.mu,
        total_f=graph.total_f,
        distinct_deletion_sets=len(set(graph.deletions)),
        fen=feedback_edge_number(graph),
        is_cactus=is_cactus(graph),
        universal_source=graph.degree(s) == graph.n - 1,
        connected=len(set(labels[1:])) <= 1,
    )


@dataclass(frozen=True)
class SubgraphMap:
    """Index translation from an induced subgraph back to its parent graph."""

    vertex_to_parent: tuple[int, ...]  # [i - 1] -> parent id of sub vertex i
    edge_to_parent: tuple[int, ...]
    parent_to_vertex: dict[int, int] = field(compare=False, default_factory=dict)

    def lift(self, cert: PathCertificate) -> PathCertificate:
        return PathCertificate(
            tuple(self.vertex_to_parent[v - 1] for v in cert.vertices),
            tuple(self.edge_to_parent[e - 1] for e in cert.edges),
        )


def induced_subgraph(
    graph: SelfDeletingGraph, vertices: Iterable[int]
) -> tuple[SelfDeletingGraph, SubgraphMap]:
    """G[X] with f restricted to surviving edges; ids renumbered in ascending order."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 1 <= v <= graph.n:
            raise ValueError(f"vertex {v} outside 1..{graph.n}")
    new_id = {v: i for i, v in enumerate(keep, start=1)}
    new_edges: list[tuple[int, int]] = []
    edge_map: list[int] = []
    edge_new_id: dict[int, int] = {}
    for idx, (u, v) in enumerate(graph.edges, start=1):
        if u in new_id and v in new_id:
            new_edges.append((new_id[u], new_id[v]))
            edge_map.append(idx)
            edge_new_id[idx] = len(edge_map)
    dels = tuple(
        frozenset(edge_new_id[e] for e in graph.f(v) if e in edge_new_id) for v in keep
    )
    sub = SelfDeletingGraph(len(keep), tuple(new_edges), dels)
    return sub, SubgraphMap(tuple(keep), tuple(edge_map), new_id)
