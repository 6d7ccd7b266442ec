"""Linear-time existence solver for cactus graphs.

On a cactus every block is a bridge or a cycle, so an s-t path is fixed up to
the side taken around each cycle on the s-t route of the block-cut tree.
Deletions then become pairwise constraints between side choices, which is a
2-SAT instance.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import (
    Instance,
    PathCertificate,
    SelfDeletingGraph,
    SolveOutcome,
    component_labels,
    is_f_conforming,
    trivial_outcome,
)


# ---------------------------------------------------------------------------
# block decomposition


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]  # edge indices per block, ascending
    cut_vertices: frozenset[int]
    is_cactus: bool


def block_cut_tree(graph: SelfDeletingGraph) -> BlockDecomposition:
    """Biconnected components by an iterative Hopcroft-Tarjan DFS with an edge stack."""
    n = graph.n
    disc = [0] * (n + 1)
    low = [0] * (n + 1)
    timer = 0
    blocks: list[tuple[int, ...]] = []
    cuts: set[int] = set()
    edge_stack: list[int] = []
    for root in range(1, n + 1):
        if disc[root]:
            continue
        timer += 1
        disc[root] = low[root] = timer
        root_children = 0
        # frames: (vertex, parent edge, neighbor iterator)
        stack = [(root, 0, iter(graph.adjacency[root]))]
        while stack:
            v, pe, it = stack[-1]
            pushed = False
            for w, e in it:
                if e == pe:
                    continue
                if not disc[w]:
                    timer += 1
                    disc[w] = low[w] = timer
                    edge_stack.append(e)
                    stack.append((w, e, iter(graph.adjacency[w])))
                    pushed = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(e)
                    low[v] = min(low[v], disc[w])
            if pushed:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                comp = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == pe:
                        break
                blocks.append(tuple(sorted(comp)))
                if u != root:
                    cuts.add(u)
                else:
                    root_children += 1
        if root_children > 1:
            cuts.add(root)
    blocks.sort()
    cactus = True
    for block in blocks:
        if len(block) == 1:
            continue
        verts = {x for e in block for x in graph.endpoints(e)}
        if len(verts) != len(block):
            cactus = False
            break
    return BlockDecomposition(tuple(blocks), frozenset(cuts), cactus)


def is_cactus(graph: SelfDeletingGraph) -> bool:
    return block_cut_tree(graph).is_cactus


# ---------------------------------------------------------------------------
# the s-t chain


@dataclass(frozen=True)
class ChainBlock:
    index: int  # 1-based position on the chain
    kind: str  # "bridge" or "cycle"
    # vertex sequences from entry cut to exit cut; a bridge has one side
    sides: tuple[tuple[int, ...], ...]
    side_edges: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BlockChain:
    cuts: tuple[int, ...]  # c_0 = s, ..., c_k = t
    blocks: tuple[ChainBlock, ...]
    vertex_pos: dict = field(compare=False, repr=False)
    edge_pos: dict = field(compare=False, repr=False)

    @property
    def cycle_indices(self) -> list[int]:
        return [b.index for b in self.blocks if b.kind == "cycle"]


# A vertex position is ("cut", a) or ("int", block, side, p); sides are 1 or 2
# and p counts from 1 at the first internal vertex.  An edge position is
# (block, side, p) where p = 1 for the edge leaving the entry cut.


def _cycle_sides(graph: SelfDeletingGraph, block: tuple[int, ...], a: int, b: int):
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in block:
        u, v = graph.endpoints(e)
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    sides = []
    for first, e0 in sorted(adj[a], key=lambda p: p[1]):
        verts, edges = [a, first], [e0]
        prev, cur = a, first
        while cur != b:
            nxt = [(w, e) for w, e in adj[cur] if w != prev][0]
            prev, cur = cur, nxt[0]
            verts.append(cur)
            edges.append(nxt[1])
        sides.append((tuple(verts), tuple(edges)))
    # side 1: the side without internal vertices, else the one with the lowest internal id
    sides.sort(key=lambda side: (len(side[0]) > 2, min(side[0][1:-1], default=0)))
    return sides


def extract_chain(graph: SelfDeletingGraph, s: int, t: int) -> BlockChain | None:
    """Blocks on the s-t route of the block-cut tree, or None if s and t are disconnected."""
    labels = component_labels(graph)
    if labels[s] != labels[t]:
        return None
    if s == t:
        return BlockChain((s,), (), {s: ("cut", 0)}, {})
    decomp = block_cut_tree(graph)
    if not decomp.is_cactus:
        raise ValueError("graph is not a cactus")
    # bipartite tree: vertex nodes v, block nodes -(i + 1)
    member: dict[int, list[int]] = {}
    block_verts = []
    for i, block in enumerate(decomp.blocks):
        verts = sorted({x for e in block for x in graph.endpoints(e)})
        block_verts.append(verts)
        for v in verts:
            member.setdefault(v, []).append(i)
    parent: dict[int, int | None] = {s: None}
    queue = deque([s])
    while queue:
        node = queue.popleft()
        if node == t:
            break
        if node > 0:
            nbrs = [-(i + 1) for i in member.get(node, [])]
        else:
            nbrs = block_verts[-node - 1]
        for x in nbrs:
            if x not in parent:
                parent[x] = node
                queue.append(x)
    route = []
    node: int | None = t
    while node is not None:
        route.append(node)
        node = parent[node]
    route.reverse()
    cuts = tuple(route[0::2])
    blocks = []
    vertex_pos: dict = {c: ("cut", a) for a, c in enumerate(cuts)}
    edge_pos: dict = {}
    for idx, bnode in enumerate(route[1::2], start=1):
        edges = decomp.blocks[-bnode - 1]
        a, b = cuts[idx - 1], cuts[idx]
        if len(edges) == 1:
            blocks.append(ChainBlock(idx, "bridge", ((a, b),), (edges,)))
            edge_pos[edges[0]] = (idx, 0, 1)
            continue
        sides = _cycle_sides(graph, edges, a, b)
        blocks.append(
            ChainBlock(idx, "cycle", tuple(s_[0] for s_ in sides), tuple(s_[1] for s_ in sides))
        )
        for side_no, (verts, sedges) in enumerate(sides, start=1):
            for p, v in enumerate(verts[1:-1], start=1):
                vertex_pos[v] = ("int", idx, side_no, p)
            for p, e in enumerate(sedges, start=1):
                edge_pos[e] = (idx, side_no, p)
    return BlockChain(cuts, tuple(blocks), vertex_pos, edge_pos)


def chain_leq(x: tuple, y: tuple) -> bool:
    """The chain partial order on vertex positions."""
    if x[0] == "cut" and y[0] == "cut":
        return x[1] <= y[1]
    if x[0] == "cut":
        return x[1] < y[1]
    if y[0] == "cut":
        return x[1] <= y[1]
    if x[1] != y[1]:
        return x[1] < y[1]
    return x[2] == y[2] and x[3] <= y[3]


def _edge_ends(chain: BlockChain, e: int) -> tuple[tuple, tuple]:
    block, side, p = chain.edge_pos[e]
    blk = chain.blocks[block - 1]
    verts = blk.sides[max(side, 1) - 1]
    return chain.vertex_pos[verts[p - 1]], chain.vertex_pos[verts[p]]


def edge_geq(chain: BlockChain, e: int, v: int) -> bool:
    """e >= v: both endpoints of e are at or after v."""
    pv = chain.vertex_pos[v]
    a, b = _edge_ends(chain, e)
    return chain_leq(pv, a) and chain_leq(pv, b)


# ---------------------------------------------------------------------------
# preprocessing and 2-SAT


@dataclass(frozen=True)
class Reduced:
    """Deletions that survive preprocessing, plus forbidden cycle sides."""

    deletions: dict[int, tuple[int, ...]]  # internal vertex -> edges, chain order
    forbidden: tuple[tuple[int, int], ...]  # (block, side)
    dead_edges: frozenset[int]
    no_reason: str | None = None


def _edge_key(chain: BlockChain, e: int) -> tuple[int, int, int]:
    return chain.edge_pos[e]


def preprocess(chain: BlockChain, graph: SelfDeletingGraph) -> Reduced:
    kept: dict[int, list[int]] = {}
    for v in chain.vertex_pos:
        es = [e for e in graph.f(v) if e in chain.edge_pos and edge_geq(chain, e, v)]
        if es:
            kept[v] = sorted(es, key=lambda e: _edge_key(chain, e))
    forbidden: set[tuple[int, int]] = set()
    dead: set[int] = set()
    # cut vertices are on every s-t path, so what they delete is gone for good
    for c in chain.cuts:
        for e in kept.pop(c, []):
            dead.add(e)
    for e in sorted(dead, key=lambda e: _edge_key(chain, e)):
        block, side, _ = chain.edge_pos[e]
        if side == 0:
            return Reduced({}, (), frozenset(dead), f"bridge {e} deleted by a cut vertex")
        forbidden.add((block, side))
    internal: dict[int, tuple[int, ...]] = {}
    for v, es in kept.items():
        _, block, side, _ = chain.vertex_pos[v]
        if any(chain.edge_pos[e][1] == 0 for e in es):
            # visiting v would delete a bridge still ahead
            forbidden.add((block, side))
            continue
        internal[v] = tuple(es)
    for block, side in forbidden:
        if (block, 3 - side) in forbidden:
            return Reduced({}, (), frozenset(dead), f"both sides of cycle block {block} unusable")
    return Reduced(internal, tuple(sorted(forbidden)), frozenset(dead))


@dataclass(frozen=True)
class TwoSatFormula:
    variables: tuple[int, ...]  # block indices of cycle blocks
    clauses: tuple[tuple[int, int], ...]  # (a, b) means a => b; literal +i is x_i, -i is not x_i

    def __str__(self) -> str:
        def lit(x: int) -> str:
            return f"x{x}" if x > 0 else f"~x{-x}"

        return " & ".join(f"({lit(a)} => {lit(b)})" for a, b in self.clauses)


def _side_lit(block: int, side: int) -> int:
    return block if side == 1 else -block


def build_2sat(chain: BlockChain, reduced: Reduced) -> TwoSatFormula:
    clauses: list[tuple[int, int]] = []
    for block, side in reduced.forbidden:
        lit = _side_lit(block, side)
        clauses.append((lit, -lit))
    order = []
    for blk in chain.blocks:
        if blk.kind != "cycle":
            continue
        for side_no, verts in enumerate(blk.sides, start=1):
            order.extend((blk.index, side_no, v) for v in verts[1:-1])
    for block, side, v in order:
        for e in reduced.deletions.get(v, ()):
            eb, es, _ = chain.edge_pos[e]
            clauses.append((_side_lit(block, side), -_side_lit(eb, es)))
    unique = tuple(dict.fromkeys(clauses))
    return TwoSatFormula(tuple(chain.cycle_indices), unique)


def solve_2sat(formula: TwoSatFormula) -> dict[int, bool] | None:
    """Implication-graph SCCs (Tarjan); None when unsatisfiable.

    A variable is true iff its positive literal's component comes first in
    Tarjan's completion order.  DFS starts from negative literals, so
    unconstrained variables come out false.
    """
    lits = []
    for x in formula.variables:
        lits.extend((-x, x))
    for a, b in formula.clauses:
        for x in (a, b):
            if abs(x) not in formula.variables:
                raise ValueError(f"clause references unknown variable {abs(x)}")
    succ: dict[int, list[int]] = {x: [] for x in lits}
    for a, b in formula.clauses:
        succ[a].append(b)
        succ[-b].append(-a)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    comp: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in lits:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    assignment = {}
    for x in formula.variables:
        if comp[x] == comp[-x]:
            return None
        assignment[x] = comp[x] < comp[-x]
    return assignment


def solve_cactus(instance: Instance) -> SolveOutcome:
    """Existence only; the shortest variant is routed elsewhere."""
    trivial = trivial_outcome(instance)
    if trivial is not None:
        return trivial
    g = instance.graph
    chain = extract_chain(g, instance.s, instance.t)
    if chain is None:
        return SolveOutcome.no("cactus: s and t in different components")
    reduced = preprocess(chain, g)
    if reduced.no_reason is not None:
        return SolveOutcome.no(f"cactus: {reduced.no_reason}")
    formula = build_2sat(chain, reduced)
    assignment = solve_2sat(formula)
    if assignment is None:
        return SolveOutcome.no("cactus: 2-SAT formula unsatisfiable")
    verts = [instance.s]
    edges: list[int] = []
    for blk in chain.blocks:
        side = 0 if blk.kind == "bridge" or assignment[blk.index] else 1
        verts.extend(blk.sides[side][1:])
        edges.extend(blk.side_edges[side])
    cert = PathCertificate(tuple(verts), tuple(edges))
    check = is_f_conforming(g, cert, require_simple=True)
    assert check, f"cactus reconstruction failed verification: {check.message}"
    return SolveOutcome.yes(cert, "cactus")
