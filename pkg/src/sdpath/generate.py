"""Instance generators: hardness reductions and random corpora.

Vertex numbering of every construction is deterministic and documented on
the generating function, so generated files are stable across runs.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Instance, SelfDeletingGraph


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]  # signed variable ids

    def __post_init__(self) -> None:
        for clause in self.clauses:
            if not clause:
                raise ValueError("empty clause")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable i + 1."""
        return all(
            any(assignment[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in self.clauses
        )

    def brute_force_sat(self) -> tuple[bool, ...] | None:
        for bits in itertools.product((False, True), repeat=self.num_vars):
            if self.satisfied_by(bits):
                return bits
        return None


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        clauses.append(tuple(pending))
    if num_vars is None:
        raise ValueError("missing 'p cnf' header")
    return CnfFormula(num_vars, tuple(clauses))


class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.dels: dict[int, set[int]] = {}

    def vertex(self) -> int:
        self.n += 1
        return self.n

    def edge(self, u: int, v: int) -> int:
        self.edges.append((u, v))
        return len(self.edges)

    def path(self, a: int, b: int, length: int) -> tuple[list[int], list[int]]:
        """``length`` fresh vertices strung between a and b."""
        verts = [self.vertex() for _ in range(length)]
        chain = [a] + verts + [b]
        edges = [self.edge(x, y) for x, y in zip(chain, chain[1:])]
        return verts, edges

    def delete(self, v: int, edges: Iterable[int]) -> None:
        self.dels.setdefault(v, set()).update(edges)

    def graph(self) -> SelfDeletingGraph:
        return SelfDeletingGraph.build(self.n, self.edges, self.dels)


def from_cnf(formula: CnfFormula, split_deletions: bool = False) -> Instance:
    """Satisfiability as a conforming-path question.

    Numbering: for each variable x in order, iota_x, then T_x (or its path),
    then F_x (or its path), then o_x; then for each clause of width w the top
    row a_1..a_w followed by the bottom row b_1..b_w.  iota_C = a_1,
    o_C = b_w and the vertical edge a_j b_j belongs to the j-th literal.
    T_x deletes the edges of the literal "not x", F_x those of "x".
    With ``split_deletions`` T_x and F_x become paths of
    max(1, |f(T_x)|, |f(F_x)|) vertices each; the leading vertices delete one
    edge each, in ascending edge order, the rest delete nothing.  Then mu <= 1
    and the graph stays bipartite.
    """
    n, clauses = formula.num_vars, formula.clauses
    # literal -> vertical edges, known only after the grids exist, so count first
    occurrences = {lit: 0 for v in range(1, n + 1) for lit in (v, -v)}
    for clause in clauses:
        for lit in clause:
            occurrences[lit] += 1
    b = _Builder()
    gadgets = []
    prev_out = None
    connectors = []
    for x in range(1, n + 1):
        iota = b.vertex()
        if prev_out is not None:
            connectors.append((prev_out, iota))
        # both sides get the same length so the gadget cycle stays even
        size = max(1, occurrences[-x], occurrences[x]) if split_deletions else 1
        t_verts = [b.vertex() for _ in range(size)]
        f_verts = [b.vertex() for _ in range(size)]
        out = b.vertex()
        gadgets.append((iota, t_verts, f_verts, out))
        prev_out = out
    grids = []
    for clause in clauses:
        w = len(clause)
        top = [b.vertex() for _ in range(w)]
        bottom = [b.vertex() for _ in range(w)]
        if prev_out is not None:
            connectors.append((prev_out, top[0]))
        grids.append((top, bottom))
        prev_out = bottom[-1]
    # edges: variable cycles, then clause grids, then connectors
    for iota, t_verts, f_verts, out in gadgets:
        for side in (t_verts, f_verts):
            chain = [iota] + side + [out]
            for u, v in zip(chain, chain[1:]):
                b.edge(u, v)
    literal_edges: dict[int, list[int]] = {lit: [] for lit in occurrences}
    for clause, (top, bottom) in zip(clauses, grids):
        for j, lit in enumerate(clause):
            literal_edges[lit].append(b.edge(top[j], bottom[j]))
        for row in (top, bottom):
            for u, v in zip(row, row[1:]):
                b.edge(u, v)
    for u, v in connectors:
        b.edge(u, v)
    for x, (iota, t_verts, f_verts, out) in zip(range(1, n + 1), gadgets):
        for verts, lit in ((t_verts, -x), (f_verts, x)):
            targets = sorted(literal_edges[lit])
            if split_deletions:
                for v, e in zip(verts, targets):
                    b.delete(v, [e])
            else:
                b.delete(verts[0], targets)
    s = gadgets[0][0] if gadgets else grids[0][0][0]
    t = prev_out
    return Instance(b.graph(), s, t)


@dataclass(frozen=True)
class ColoredGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    classes: tuple[tuple[int, ...], ...]  # V_1..V_k

    def __post_init__(self) -> None:
        seen = [v for cls in self.classes for v in cls]
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError("color classes must partition 1..n")

    def has_multicolored_clique(self) -> bool:
        adj = {frozenset(e) for e in self.edges}
        for pick in itertools.product(*self.classes):
            if all(frozenset((a, c)) in adj for a, c in itertools.combinations(pick, 2)):
                return True
        return False


def from_multicolored_clique(graph: ColoredGraph, split_deletions: bool = False) -> Instance:
    """Multicolored clique as a conforming-path question.

    Numbering: guards g_0..g_k are 1..k+1; then for each class in order and
    each vertex v of it in the given order, y_v (or its path).  In the split
    variant the path of v has max(1, |f(y_v)|) vertices and deletes one edge
    per vertex in ascending edge order; e_1 and e_2 of v are the first and
    last edge of that path.
    """
    k = len(graph.classes)
    adj = {frozenset(e) for e in graph.edges}
    b = _Builder()
    guards = [b.vertex() for _ in range(k + 1)]
    color = {v: i for i, cls in enumerate(graph.classes) for v in cls}

    def missing(v: int) -> list[int]:
        return [
            w for w in range(1, graph.n + 1)
            if color[w] != color[v] and frozenset((v, w)) not in adj
        ]

    lengths = {}
    for v in range(1, graph.n + 1):
        lengths[v] = max(1, 2 * len(missing(v))) if split_deletions else 1
    ends: dict[int, tuple[int, int]] = {}
    pieces: dict[int, list[int]] = {}
    for i, cls in enumerate(graph.classes):
        for v in cls:
            verts, edges = b.path(guards[i], guards[i + 1], lengths[v])
            pieces[v] = verts
            ends[v] = (edges[0], edges[-1])
    for v in range(1, graph.n + 1):
        targets = sorted(e for w in missing(v) for e in ends[w])
        if split_deletions:
            for u, e in zip(pieces[v], targets):
                b.delete(u, [e])
        else:
            b.delete(pieces[v][0], targets)
    return Instance(b.graph(), guards[0], guards[-1])


def _check_cubic(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    nbrs: list[list[int]] = [[] for _ in range(n + 1)]
    seen = set()
    for u, v in edges:
        if u == v or not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"bad edge ({u}, {v})")
        key = frozenset((u, v))
        if key in seen:
            raise ValueError(f"parallel edge ({u}, {v})")
        seen.add(key)
        nbrs[u].append(v)
        nbrs[v].append(u)
    for v in range(1, n + 1):
        if len(nbrs[v]) != 3:
            raise ValueError(f"graph is not cubic: vertex {v} has degree {len(nbrs[v])}")
    return [sorted(x) for x in nbrs]


def from_cubic_independent_set(n: int, edges: Sequence[tuple[int, int]], k: int) -> Instance:
    """Independent set of size k in a cubic graph as a bounded-length path question.

    Each vertex v becomes a cycle between s^v and t^v made of a 5-edge path
    P_0 and the 4-edge path P_1 = (s^v, a_1, a_2, a_3, t^v); consecutive
    gadgets share t^v = s^next.  Taking P_1 means "v is in the set"; a_j^v
    deletes the first edge of P_1 of the j-th neighbor.  The budget is
    5n - k edges, i.e. 5n - k + 1 vertices.

    Numbering: s = 1; gadget i then adds the four inner vertices of P_0, the
    three a vertices, and t^{v_i}, so the result has 8n + 1 vertices.
    """
    nbrs = _check_cubic(n, edges)
    b = _Builder()
    cut = b.vertex()
    s = cut
    first_edge: dict[int, int] = {}
    a_verts: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        p0 = [b.vertex() for _ in range(4)]
        a = [b.vertex() for _ in range(3)]
        nxt = b.vertex()
        chain0 = [cut] + p0 + [nxt]
        for x, y in zip(chain0, chain0[1:]):
            b.edge(x, y)
        chain1 = [cut] + a + [nxt]
        ids = [b.edge(x, y) for x, y in zip(chain1, chain1[1:])]
        first_edge[v] = ids[0]
        a_verts[v] = a
        cut = nxt
    for v in range(1, n + 1):
        for j, u in enumerate(nbrs[v]):
            b.delete(a_verts[v][j], [first_edge[u]])
    budget = max(1, 5 * n - k + 1)
    return Instance(b.graph(), s, cut, budget)


def has_independent_set(n: int, edges: Sequence[tuple[int, int]], k: int) -> bool:
    adj = {frozenset(e) for e in edges}
    for pick in itertools.combinations(range(1, n + 1), k):
        if all(frozenset(p) not in adj for p in itertools.combinations(pick, 2)):
            return True
    return False


# ---------------------------------------------------------------------------
# random corpora (all driven by random.Random(seed))


def _random_deletions(rng: random.Random, n: int, m: int, mu_max: int) -> list[list[int]]:
    out = []
    for _ in range(n):
        size = rng.randint(0, min(mu_max, m))
        out.append(sorted(rng.sample(range(1, m + 1), size)))
    return out


def random_instance(n: int, m: int, mu_max: int, seed: int) -> Instance:
    """Uniform simple graph with m edges; |f(v)| uniform in 0..mu_max; s = 1, t = n."""
    if n < 1 or m < 0 or m > n * (n - 1) // 2 or mu_max < 0:
        raise ValueError("infeasible parameters")
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    edges = sorted(rng.sample(pairs, m))
    g = SelfDeletingGraph.build(n, edges, _random_deletions(rng, n, m, mu_max))
    return Instance(g, 1, n)


def random_connected_instance(n: int, m: int, mu_max: int, seed: int) -> Instance:
    """Random spanning tree plus m - n + 1 extra edges; s = 1, t = n."""
    if m < n - 1 or m > n * (n - 1) // 2:
        raise ValueError("infeasible parameters")
    rng = random.Random(seed)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    chosen = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        chosen.add((min(u, v), max(u, v)))
    rest = [p for p in itertools.combinations(range(1, n + 1), 2) if p not in chosen]
    chosen.update(rng.sample(rest, m - (n - 1)))
    edges = sorted(chosen)
    g = SelfDeletingGraph.build(n, edges, _random_deletions(rng, n, m, mu_max))
    return Instance(g, 1, n)


def random_cactus(n: int, mu_max: int, seed: int, cycle_bias: float = 0.6) -> Instance:
    """Connected random cactus: grow by hanging bridges or cycles off existing vertices."""
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    count = 1
    while count < n:
        anchor = rng.randint(1, count)
        room = n - count
        if room >= 2 and rng.random() < cycle_bias:
            size = rng.randint(2, min(room, 5))  # new vertices on the cycle
            verts = list(range(count + 1, count + size + 1))
            chain = [anchor] + verts + [anchor]
            edges.extend(zip(chain, chain[1:]))
            count += size
        else:
            count += 1
            edges.append((anchor, count))
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    relabel = {i + 1: labels[i] for i in range(n)}
    edges = sorted((relabel[u], relabel[v]) for u, v in edges)
    m = len(edges)
    g = SelfDeletingGraph.build(n, edges, _random_deletions(rng, n, m, mu_max))
    s, t = rng.sample(range(1, n + 1), 2) if n > 1 else (1, 1)
    return Instance(g, s, t)


def random_clique_instance(n: int, mu_max: int, seed: int) -> Instance:
    rng = random.Random(seed)
    edges = list(itertools.combinations(range(1, n + 1), 2))
    g = SelfDeletingGraph.build(n, edges, _random_deletions(rng, n, len(edges), mu_max))
    return Instance(g, 1, n)


def random_cnf(num_vars: int, num_clauses: int, width: int, seed: int) -> CnfFormula:
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        vars_ = rng.sample(range(1, num_vars + 1), min(width, num_vars))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return CnfFormula(num_vars, tuple(clauses))


def random_colored_graph(n: int, k: int, p: float, seed: int) -> ColoredGraph:
    """Vertices dealt round-robin into k classes; cross-class edges with probability p."""
    rng = random.Random(seed)
    classes = tuple(tuple(range(i + 1, n + 1, k)) for i in range(k))
    color = {v: i for i, cls in enumerate(classes) for v in cls}
    edges = tuple(
        (u, v)
        for u, v in itertools.combinations(range(1, n + 1), 2)
        if color[u] != color[v] and rng.random() < p
    )
    return ColoredGraph(n, edges, classes)


def random_cubic_graph(n: int, seed: int) -> list[tuple[int, int]]:
    """Uniform-ish simple cubic graph by repeated pairing; n must be even and >= 4."""
    if n < 4 or n % 2:
        raise ValueError("cubic graphs need an even number of at least 4 vertices")
    rng = random.Random(seed)
    while True:
        stubs = [v for v in range(1, n + 1) for _ in range(3)]
        rng.shuffle(stubs)
        pairs = [tuple(sorted(stubs[i:i + 2])) for i in range(0, len(stubs), 2)]
        if all(a != b for a, b in pairs) and len(set(pairs)) == len(pairs):
            return sorted(pairs)
