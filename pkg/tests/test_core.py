import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpora import SAMPLE_FORMULA
from sdpath.core import (
    Instance,
    PathCertificate,
    SelfDeletingGraph,
    induced_subgraph,
    is_f_conforming,
    shorten_walk,
    stats,
    validate,
)
from sdpath.generate import CnfFormula, from_cnf, random_instance


def path_graph(n, dels=None):
    return SelfDeletingGraph.build(n, [(i, i + 1) for i in range(1, n)], dels)


def test_validate_minimal_graph():
    assert validate(SelfDeletingGraph.build(2, [(1, 2)])) == []


def test_validate_endpoint_out_of_range():
    errs = validate(SelfDeletingGraph.build(2, [(1, 3)]))
    assert any("endpoint out of range" in e for e in errs)


def test_validate_dangling_deletion():
    errs = validate(SelfDeletingGraph.build(2, [(1, 2)], {1: [5]}))
    assert any("deletion references missing edge" in e for e in errs)


def test_validate_loops_and_parallel_edges():
    errs = validate(SelfDeletingGraph.build(3, [(1, 2), (2, 1), (3, 3)]))
    assert any("duplicate" in e for e in errs)
    assert any("self-loop" in e for e in errs)


def test_build_collapses_duplicate_deletions():
    g = SelfDeletingGraph.build(2, [(1, 2)], {1: [1, 1]})
    assert g.f(1) == frozenset({1})
    assert g.total_f == 1


def test_instance_rejects_bad_terminals():
    g = path_graph(2)
    with pytest.raises(ValueError):
        Instance(g, 1, 3)
    with pytest.raises(ValueError):
        Instance(g, 1, 2, 0)


def test_adjacency_lists_each_edge_once_from_each_end():
    g = SelfDeletingGraph.build(4, [(1, 2), (2, 3), (3, 1), (3, 4)])
    seen = sorted(e for v in range(1, 5) for _, e in g.adjacency[v])
    assert seen == [1, 1, 2, 2, 3, 3, 4, 4]


def test_conforming_single_vertex():
    assert is_f_conforming(path_graph(1), PathCertificate((1,)))


def test_conforming_deleter_before_edge():
    g = path_graph(2, {1: [1]})
    res = is_f_conforming(g, PathCertificate((1, 2), (1,)))
    assert not res
    assert (res.kind, res.step, res.deleter) == ("deleted", 1, 1)


def test_conforming_deletion_after_traversal():
    g = path_graph(2, {2: [1]})
    assert is_f_conforming(g, PathCertificate((1, 2), (1,)))


def test_structural_violation_is_distinct():
    g = path_graph(3)
    res = is_f_conforming(g, PathCertificate((1, 3), (1,)))
    assert res.kind == "structure"


def test_require_simple_flags_repeats():
    g = path_graph(2)
    walk = PathCertificate((1, 2, 1), (1, 1))
    assert is_f_conforming(g, walk)
    assert is_f_conforming(g, walk, require_simple=True).kind == "repeat"


def test_shorten_identity_on_paths():
    g = path_graph(4)
    p = PathCertificate.from_vertices(g, [1, 2, 3, 4])
    assert shorten_walk(g, p) == p


def test_shorten_excises_loop():
    # s=1, a=2, t=3 ; e1={s,a}, e2={s,t}
    g = SelfDeletingGraph.build(3, [(1, 2), (1, 3)])
    walk = PathCertificate((1, 2, 1, 3), (1, 1, 2))
    assert shorten_walk(g, walk) == PathCertificate((1, 3), (2,))


def test_shorten_rejects_nonconforming():
    g = path_graph(2, {1: [1]})
    with pytest.raises(ValueError):
        shorten_walk(g, PathCertificate((1, 2), (1,)))


def random_conforming_walk(g, rng, start, steps):
    verts, edges, deleted = [start], [], set(g.f(start))
    for _ in range(steps):
        options = [(w, e) for w, e in g.adjacency[verts[-1]] if e not in deleted]
        if not options:
            break
        w, e = rng.choice(options)
        verts.append(w)
        edges.append(e)
        deleted |= g.f(w)
    return PathCertificate(tuple(verts), tuple(edges))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_shortening_preserves_conformity(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    inst = random_instance(n, rng.randint(1, n * (n - 1) // 2), rng.randint(0, 3), seed)
    g = inst.graph
    if g.m == 0 or not any(g.adjacency[v] for v in range(1, g.n + 1)):
        return
    start = rng.choice([v for v in range(1, g.n + 1) if g.adjacency[v]])
    walk = random_conforming_walk(g, rng, start, 25)
    assert is_f_conforming(g, walk)
    path = shorten_walk(g, walk)
    assert is_f_conforming(g, path, require_simple=True)
    assert path.vertices[0] == walk.vertices[0] and path.vertices[-1] == walk.vertices[-1]
    assert len(path.edges) <= len(walk.edges)
    # every prefix of a conforming walk conforms
    for r in range(1, walk.num_vertices + 1):
        prefix = PathCertificate(walk.vertices[:r], walk.edges[: r - 1])
        assert is_f_conforming(g, prefix)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_empty_deletions_mean_plain_walk_validity(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    inst = random_instance(n, rng.randint(1, n * (n - 1) // 2), 0, seed)
    g = inst.graph
    start = rng.randint(1, g.n)
    walk = random_conforming_walk(g, rng, start, 10)
    assert is_f_conforming(g, walk)


def test_stats_path():
    st_ = stats(path_graph(3), 1, 3)
    assert (st_.mu, st_.total_f, st_.distinct_deletion_sets, st_.fen, st_.is_cactus) == (
        0, 0, 1, 0, True)


def test_stats_c4():
    g = SelfDeletingGraph.build(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    assert stats(g, 1, 3).fen == 1


def test_stats_sample_formula_mu():
    formula = CnfFormula(3, SAMPLE_FORMULA)
    inst = from_cnf(formula)
    occurrences = {}
    for clause in formula.clauses:
        for lit in clause:
            occurrences[lit] = occurrences.get(lit, 0) + 1
    # T_x deletes the "not x" columns, F_x the "x" columns
    assert stats(inst.graph, inst.s, inst.t).mu == max(occurrences.values()) == 2


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_stats_match_raw_fields(seed):
    rng = random.Random(seed)
    inst = random_instance(rng.randint(1, 10), 0, 0, seed) if rng.random() < 0.1 else random_instance(
        n := rng.randint(2, 10), rng.randint(0, n * (n - 1) // 2), rng.randint(0, 4), seed)
    g = inst.graph
    st_ = stats(g, inst.s, inst.t)
    assert st_.mu == max(len(d) for d in g.deletions)
    assert st_.total_f == sum(len(d) for d in g.deletions)
    assert st_.distinct_deletion_sets == len(set(g.deletions))
    # component count by union-find, independent of the package
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        parent[find(u)] = find(v)
    cc = len({find(v) for v in range(1, g.n + 1)})
    assert st_.fen == g.m - g.n + cc
    assert st_.connected == (cc == 1)


def test_induced_full_set_is_identity():
    g = SelfDeletingGraph.build(3, [(1, 2), (2, 3)], {1: [2]})
    sub, remap = induced_subgraph(g, [1, 2, 3])
    assert sub == g
    assert remap.edge_to_parent == (1, 2)


def test_induced_filters_deletions():
    # K4; edge ids in lexicographic order
    edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    g = SelfDeletingGraph.build(4, edges, {1: [3], 2: [4], 3: [6], 4: [3, 1]})
    sub, remap = induced_subgraph(g, [1, 2, 3])
    assert sub.edges == ((1, 2), (1, 3), (2, 3))
    # 1 deleted {1,4}: gone; 2 deleted {2,3}: now edge 3; 3 deleted {3,4}: gone
    assert sub.deletions == (frozenset(), frozenset({3}), frozenset())
    assert remap.lift(PathCertificate((1, 3), (2,))) == PathCertificate((1, 3), (2,))
