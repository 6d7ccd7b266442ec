"""Kernels: leaf removal and chain contraction for small feedback edge number,
plus the split of universal-source instances into small subinstances.

Kernelization keeps a mutable working copy with stable labels: original
vertices keep 1..n, contracted chains get fresh labels n+1, n+2, ... and new
edges get fresh indices after the original m.  The result is renumbered
once at the end, and a trace records enough to replay the reduction and to
lift certificates back.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Instance,
    PathCertificate,
    SelfDeletingGraph,
    SubgraphMap,
    component_labels,
    induced_subgraph,
)
from .fen import feedback_edges


class KernelState:
    """Working copy of an instance under reduction."""

    def __init__(self, instance: Instance, vertices: set[int] | None = None):
        g = instance.graph
        keep = set(range(1, g.n + 1)) if vertices is None else set(vertices)
        self.s, self.t = instance.s, instance.t
        self.next_vertex = g.n + 1
        self.next_edge = g.m + 1
        self.edges: dict[int, tuple[int, int]] = {}
        self.adj: dict[int, dict[int, int]] = {v: {} for v in keep}
        for idx, (u, v) in enumerate(g.edges, start=1):
            if u in keep and v in keep:
                self.edges[idx] = (u, v)
                self.adj[u][v] = idx
                self.adj[v][u] = idx
        self.dels: dict[int, set[int]] = {
            v: {e for e in g.f(v) if e in self.edges} for v in keep
        }
        self.deleters: dict[int, set[int]] = {e: set() for e in self.edges}
        for v, es in self.dels.items():
            for e in es:
                self.deleters[e].add(v)
        sub, _ = induced_subgraph(g, keep)
        sub_tree, sub_feedback = feedback_edges(sub)
        ordered = sorted(self.edges)
        self.feedback = {ordered[e - 1] for e in sub_feedback}

    # -- primitives ---------------------------------------------------------

    def _drop_edge(self, e: int) -> None:
        u, v = self.edges.pop(e)
        del self.adj[u][v]
        del self.adj[v][u]
        for w in self.deleters.pop(e):
            self.dels[w].discard(e)

    def _add_edge(self, u: int, v: int) -> int:
        e = self.next_edge
        self.next_edge += 1
        self.edges[e] = (u, v)
        self.adj[u][v] = e
        self.adj[v][u] = e
        self.deleters[e] = set()
        return e

    def _drop_vertex(self, v: int) -> None:
        for e in list(self.adj[v].values()):
            self._drop_edge(e)
        for e in self.dels.pop(v):
            self.deleters[e].discard(v)
        del self.adj[v]

    def _delete(self, v: int, e: int) -> None:
        self.dels[v].add(e)
        self.deleters[e].add(v)

    def _conforming(self, chain: list[int]) -> bool:
        deleted: set[int] = set()
        for a, b in zip(chain, chain[1:]):
            deleted |= self.dels[a]
            if self.adj[a][b] in deleted:
                return False
        return True

    def apply_leaf(self, v: int) -> None:
        self._drop_vertex(v)

    def apply_chain(self, chain: list[int]) -> int | None:
        """Contract the interior of ``chain``; returns the new vertex, if any."""
        v1, vr, inner = chain[0], chain[-1], chain[1:-1]
        inner_set = set(inner)
        chain_edges = [self.adj[a][b] for a, b in zip(chain, chain[1:])]
        forward = self._conforming(chain)
        backward = self._conforming(chain[::-1])
        # item i: what the interior deleted away from the interior itself
        star = set()
        for w in inner:
            star |= self.dels[w]
        star -= set(chain_edges)
        # item ii: outside vertices that deleted a chain edge
        outside = set()
        for e in chain_edges:
            outside |= self.deleters[e] - inner_set
        for w in inner:
            self._drop_vertex(w)
        if v1 == vr:
            return None
        vstar = self.next_vertex
        self.next_vertex += 1
        self.adj[vstar] = {}
        self.dels[vstar] = set()
        a = self._add_edge(v1, vstar)
        b = self._add_edge(vstar, vr)
        for e in star:
            self._delete(vstar, e)
        for w in outside:
            self._delete(w, a)
            self._delete(w, b)
        # item iii
        if not forward:
            self._delete(vstar, b)
        if not backward:
            self._delete(vstar, a)
        return vstar

    # -- rule search --------------------------------------------------------

    def find_leaf(self) -> int | None:
        for v in sorted(self.adj):
            if len(self.adj[v]) == 1 and v not in (self.s, self.t):
                return v
        return None

    def _interior_ok(self, v: int) -> bool:
        if v in (self.s, self.t) or len(self.adj[v]) != 2:
            return False
        return not any(e in self.feedback for e in self.adj[v].values())

    def find_chain(self) -> list[int] | None:
        """Smallest-labelled maximal chain with at least two interior vertices."""
        seen: set[int] = set()
        for w in sorted(self.adj):
            if w in seen or not self._interior_ok(w):
                continue
            left, right = sorted(self.adj[w])
            run = [w]
            ends = []
            for direction, start in ((0, left), (1, right)):
                prev, cur = w, start
                while self._interior_ok(cur) and cur != w:
                    if direction == 0:
                        run.insert(0, cur)
                    else:
                        run.append(cur)
                    nxt = [x for x in self.adj[cur] if x != prev][0]
                    prev, cur = cur, nxt
                ends.append(cur)
            seen.update(run)
            if ends[0] == w or ends[1] == w:
                continue  # a cycle of interior vertices; cannot happen with F fixed
            if len(run) >= 2:
                chain = [ends[0]] + run + [ends[1]]
                return chain if chain[0] <= chain[-1] else chain[::-1]
        return None

    def rule_remove_leaf(self) -> int | None:
        v = self.find_leaf()
        if v is not None:
            self.apply_leaf(v)
        return v

    def rule_contract_chain(self) -> tuple[list[int], int | None] | None:
        chain = self.find_chain()
        if chain is None:
            return None
        return chain, self.apply_chain(chain)

    # -- output -------------------------------------------------------------

    def finish(self) -> tuple[SelfDeletingGraph, dict[int, int], dict[int, int]]:
        vmap = {v: i for i, v in enumerate(sorted(self.adj), start=1)}
        emap = {e: i for i, e in enumerate(sorted(self.edges), start=1)}
        edges = [(vmap[u], vmap[v]) for _, (u, v) in sorted(self.edges.items())]
        dels = [frozenset(emap[e] for e in self.dels[v]) for v in sorted(self.adj)]
        return SelfDeletingGraph(len(vmap), tuple(edges), tuple(dels)), vmap, emap


def rule_remove_leaf(state: KernelState) -> bool:
    return state.rule_remove_leaf() is not None


def rule_contract_chain(state: KernelState) -> bool:
    return state.rule_contract_chain() is not None


@dataclass
class KernelTrace:
    original: Instance
    kept: tuple[int, ...] | None  # vertices of s's component; None if t was cut off
    steps: list[tuple] = field(default_factory=list)  # ("leaf", v) or ("chain", chain, vstar)
    chains: dict[int, tuple[int, ...]] = field(default_factory=dict)
    vertex_map: dict[int, int] = field(default_factory=dict)  # working label -> output id
    edge_map: dict[int, int] = field(default_factory=dict)

    def replay(self) -> Instance:
        """Re-run the recorded steps on the original instance."""
        if self.kept is None:
            return _cut_off_instance()
        state = KernelState(self.original, set(self.kept))
        for step in self.steps:
            if step[0] == "leaf":
                state.apply_leaf(step[1])
            else:
                got = state.apply_chain(list(step[1]))
                assert got == step[2], "replay diverged"
        graph, vmap, _ = state.finish()
        return Instance(graph, vmap[state.s], vmap[state.t])


def _cut_off_instance() -> Instance:
    return Instance(SelfDeletingGraph(2, (), (frozenset(), frozenset())), 1, 2)


def kernelize_fen(instance: Instance) -> tuple[Instance, KernelTrace]:
    """Exhaust leaf removal, then chain contraction, until neither applies.

    The result has at most 8 fen + 4 vertices and the same answer.
    """
    if instance.max_vertices is not None:
        raise ValueError("kernelization does not preserve path lengths; drop max_vertices")
    g = instance.graph
    labels = component_labels(g)
    if labels[instance.s] != labels[instance.t]:
        return _cut_off_instance(), KernelTrace(instance, None)
    kept = tuple(v for v in range(1, g.n + 1) if labels[v] == labels[instance.s])
    state = KernelState(instance, set(kept))
    trace = KernelTrace(instance, kept)
    while True:
        while (v := state.rule_remove_leaf()) is not None:
            trace.steps.append(("leaf", v))
        hit = state.rule_contract_chain()
        if hit is None:
            break
        chain, vstar = hit
        trace.steps.append(("chain", tuple(chain), vstar))
        if vstar is not None:
            trace.chains[vstar] = tuple(chain)
    graph, vmap, emap = state.finish()
    trace.vertex_map, trace.edge_map = vmap, emap
    reduced = Instance(graph, vmap[state.s], vmap[state.t])
    fen = len(feedback_edges(graph)[1])
    assert graph.n <= 8 * fen + 4, f"kernel has {graph.n} vertices > 8*{fen}+4"
    return reduced, trace


def lift_certificate(trace: KernelTrace, cert: PathCertificate) -> PathCertificate:
    """Expand contracted chains back into original vertices."""
    if trace.kept is None:
        raise ValueError("the reduced instance is a no-instance; nothing to lift")
    back = {i: v for v, i in trace.vertex_map.items()}
    seq = [back[v] for v in cert.vertices]
    while True:
        pos = next((i for i, v in enumerate(seq) if v in trace.chains), None)
        if pos is None:
            break
        chain = trace.chains[seq[pos]]
        before = seq[pos - 1] if pos > 0 else None
        after = seq[pos + 1] if pos + 1 < len(seq) else None
        if before == chain[0] or after == chain[-1]:
            inner = list(chain[1:-1])
        elif before == chain[-1] or after == chain[0]:
            inner = list(chain[-2:0:-1])
        else:
            raise AssertionError(f"cannot orient contracted vertex {seq[pos]}")
        seq[pos:pos + 1] = inner
    return PathCertificate.from_vertices(trace.original.graph, seq)


# ---------------------------------------------------------------------------
# universal source


@dataclass(frozen=True)
class SubInstance:
    second: int  # the guessed second path vertex v
    instance: Instance
    remap: SubgraphMap


def turing_split_universal(instance: Instance) -> list[SubInstance]:
    """One subinstance per guess of the second path vertex.

    On a shortest path every later vertex v_i (i >= 3) must have its edge to s
    deleted by s, so the path lives inside {s, t, v_2} plus those neighbors.
    """
    g, s, t = instance.graph, instance.s, instance.t
    if g.degree(s) != g.n - 1:
        raise ValueError("source is not universal; use another solver")
    cut = set()
    for e in g.f(s):
        a, b = g.endpoints(e)
        if s in (a, b):
            cut.add(b if a == s else a)
    out = []
    for v in range(1, g.n + 1):
        if v == s:
            continue
        sub, remap = induced_subgraph(g, {s, t, v} | cut)
        sub_inst = Instance(
            sub, remap.parent_to_vertex[s], remap.parent_to_vertex[t], instance.max_vertices
        )
        out.append(SubInstance(v, sub_inst, remap))
    return out


def clique_k_bound(instance: Instance) -> int:
    """A conforming path on a clique, if any, has at most mu + 2 vertices."""
    g = instance.graph
    if g.m != g.n * (g.n - 1) // 2:
        raise ValueError("graph is not a clique")
    return g.mu + 2
