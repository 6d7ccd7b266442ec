"""Color coding for the shortest variant, parameterized by k and mu.

An edge coloring relaxes conformity to the color level: a path is
chi-compliant when no traversed edge shares a color with an edge deleted by
an earlier (or the current) vertex.  Compliant paths are conforming, and a
coloring that is injective on the path edges plus the touched deletion sets
makes a conforming path compliant.  Searching over (vertex, colors still
available) states therefore finds conforming paths, and either random
colorings or an explicit coloring family supplies the right coloring.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import (
    Instance,
    PathCertificate,
    SelfDeletingGraph,
    SolveOutcome,
    is_f_conforming,
    shorten_walk,
    trivial_outcome,
)


@dataclass(frozen=True)
class EdgeColoring:
    q: int
    colors: tuple[int, ...]  # colors[e - 1] in 1..q

    def __post_init__(self) -> None:
        for c in self.colors:
            if not 1 <= c <= self.q:
                raise ValueError(f"color {c} outside 1..{self.q}")

    def __call__(self, e: int) -> int:
        return self.colors[e - 1]

    def of(self, edges: Iterable[int]) -> set[int]:
        return {self.colors[e - 1] for e in edges}

    def partition_key(self) -> tuple[int, ...]:
        """Colors renamed by first appearance; equal keys induce the same search."""
        seen: dict[int, int] = {}
        return tuple(seen.setdefault(c, len(seen)) for c in self.colors)


@dataclass(frozen=True)
class PathClass:
    chi_compliant: bool
    half_chi_rainbow: bool
    chi_rainbow: bool


def classify_path(
    graph: SelfDeletingGraph, coloring: EdgeColoring, path: PathCertificate
) -> PathClass:
    vs, es = path.vertices, path.edges
    removed: set[int] = set()
    compliant = True
    for i, e in enumerate(es):
        removed |= coloring.of(graph.f(vs[i]))
        if coloring(e) in removed:
            compliant = False
            break
    path_edges = set(es)
    touched = set().union(*(graph.f(v) for v in vs)) if vs else set()
    path_colors = [coloring(e) for e in es]
    injective_on_path = len(set(path_colors)) == len(path_colors) and len(path_edges) == len(es)
    outside = coloring.of(touched - path_edges)
    half = injective_on_path and not (outside & set(path_colors))
    everything = path_edges | touched
    rainbow = len(coloring.of(everything)) == len(everything)
    return PathClass(compliant, half, rainbow)


def chi_compliant_search(
    instance: Instance,
    coloring: EdgeColoring,
    k: int,
    colors: Iterable[int] | None = None,
    color_budget: int = 64,
    state_budget: int = 2_000_000,
) -> SolveOutcome:
    """BFS over (vertex, available colors) restricted to paths on at most k vertices.

    Only colors that are both deletable and carried by some edge can change
    what is traversable, so only those are tracked as bits; every other
    color of Q is permanently available and colors outside Q never are.
    """
    trivial = trivial_outcome(instance)
    if trivial is not None:
        return trivial
    g, s, t = instance.graph, instance.s, instance.t
    allowed = set(range(1, coloring.q + 1)) if colors is None else set(colors)
    removable: set[int] = set()
    for dels in g.deletions:
        removable |= coloring.of(dels)
    edge_colors = set(coloring.colors)
    live = sorted(removable & edge_colors & allowed)
    if len(live) > color_budget:
        return SolveOutcome.inconclusive(
            f"{len(live)} live colors exceed the color budget {color_budget}"
        )
    bit_of = {c: 1 << i for i, c in enumerate(live)}
    # per edge: 0 = always usable, -1 = never usable, else the bit it needs
    need = [0] * (g.m + 1)
    for e in range(1, g.m + 1):
        c = coloring(e)
        need[e] = -1 if c not in allowed else bit_of.get(c, 0)
    kill = [0] * (g.n + 1)
    for v in range(1, g.n + 1):
        mask = 0
        for c in coloring.of(g.f(v)):
            mask |= bit_of.get(c, 0)
        kill[v] = mask
    full = (1 << len(live)) - 1
    start = (s, full & ~kill[s])
    parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    depth = {start: 1}
    queue = deque([start])
    goal = None
    while queue and goal is None:
        state = queue.popleft()
        u, avail = state
        if depth[state] >= k:
            continue
        for w, e in g.adjacency[u]:
            bit = need[e]
            if bit < 0 or (bit and not avail & bit):
                continue
            nxt = (w, avail & ~kill[w])
            if nxt in parent:
                continue
            parent[nxt] = (state, e)
            depth[nxt] = depth[state] + 1
            if w == t:
                goal = nxt
                break
            if len(parent) > state_budget:
                return SolveOutcome.inconclusive("color search state budget exhausted")
            queue.append(nxt)
    if goal is None:
        return SolveOutcome.no("no chi-compliant path within k vertices")
    verts, edges = [goal[0]], []
    cur = goal
    while parent[cur] is not None:
        prev, e = parent[cur]
        edges.append(e)
        verts.append(prev[0])
        cur = prev
    walk = PathCertificate(tuple(reversed(verts)), tuple(reversed(edges)))
    # a compliant walk is conforming, so it can be shortened like any other
    check = is_f_conforming(g, walk)
    assert check, f"compliant walk failed verification: {check.message}"
    return SolveOutcome.yes(shorten_walk(g, walk), "color-coding")


def _plain_bfs(instance: Instance, k: int) -> SolveOutcome:
    from .statespace import solve_statespace

    return solve_statespace(instance.with_budget(k))


def solve_randomized(
    instance: Instance,
    k: int,
    epsilon: float = 0.05,
    seed: int = 0,
    max_trials: int | None = None,
    color_budget: int = 64,
) -> SolveOutcome:
    """One-sided Monte Carlo: never a false Yes, misses a Yes with probability <= epsilon.

    Trial i colors edges uniformly from [q], q = 4 k max(mu, 1), with
    ``random.Random(seed + i)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    trivial = trivial_outcome(instance)
    if trivial is not None:
        return trivial
    g = instance.graph
    if g.mu == 0:
        return _plain_bfs(instance, k)
    q = 4 * k * max(g.mu, 1)
    trials = math.ceil(2**k * math.log(1 / epsilon))
    if max_trials is not None:
        trials = min(trials, max_trials)
    skipped = 0
    for trial in range(trials):
        rng = random.Random(seed + trial)
        coloring = EdgeColoring(q, tuple(rng.randint(1, q) for _ in range(g.m)))
        out = chi_compliant_search(instance, coloring, k, color_budget=color_budget)
        if out.is_yes:
            return SolveOutcome.yes(out.certificate, f"randomized color coding, trial {trial}")
        if out.status.name == "INCONCLUSIVE":
            skipped += 1
    note = f" ({skipped} trials over budget)" if skipped else ""
    return SolveOutcome.inconclusive(f"one-sided: {trials} random colorings found nothing{note}")


def target_set_size(mu: int, k: int) -> int:
    """Largest |E(P) plus touched deletions| for a path on at most k vertices."""
    return max(mu, 1) * k + k - 1


def _next_prime(x: int) -> int:
    p = max(2, x + 1)
    while any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        p += 1
    return p


def build_perfect_family(m: int, q: int) -> Iterator[EdgeColoring]:
    """Colorings E -> [q^2] such that every edge set of size <= q gets an injective member.

    Members are e -> ((a e) mod p) mod q^2 + 1 for a = 1..p-1 with p the
    smallest prime above max(m, q^2).  A pair of edges collides for at most
    2(p-1)/q^2 multipliers, so a set of q edges loses fewer than p-1 of them.
    """
    if m < 1:
        raise ValueError("universe must be nonempty")
    q2 = q * q
    p = _next_prime(max(m, q2))
    for a in range(1, p):
        yield EdgeColoring(q2, tuple((a * e) % p % q2 + 1 for e in range(1, m + 1)))


def solve_deterministic(
    instance: Instance,
    k: int,
    color_budget: int = 64,
) -> SolveOutcome:
    """Scan the coloring family; exact for paths on at most k vertices."""
    if k < 1:
        raise ValueError("k must be positive")
    trivial = trivial_outcome(instance)
    if trivial is not None:
        return trivial
    g = instance.graph
    if g.mu == 0:
        return _plain_bfs(instance, k)
    q = target_set_size(g.mu, k)
    seen: set[tuple[int, ...]] = set()
    inconclusive = 0
    for idx, coloring in enumerate(build_perfect_family(g.m, q)):
        key = coloring.partition_key()
        if key in seen:
            continue
        seen.add(key)
        out = chi_compliant_search(instance, coloring, k, color_budget=color_budget)
        if out.is_yes:
            return SolveOutcome.yes(out.certificate, f"deterministic color coding, member {idx + 1}")
        if out.is_no and len(set(coloring.colors)) == g.m:
            # injective on all of E: compliance equals conformity, so this No is final
            return SolveOutcome.no("deterministic color coding: injective member found no path")
        if not out.is_yes and not out.is_no:
            inconclusive += 1
    if inconclusive:
        return SolveOutcome.inconclusive(
            f"{inconclusive} family members exceeded the color budget; try statespace or oracle"
        )
    return SolveOutcome.no("deterministic color coding: no member yields a compliant path")
