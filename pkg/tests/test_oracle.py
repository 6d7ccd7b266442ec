import time

import networkx as nx

from corpora import corpus_instance
from sdpath.core import Instance, PathCertificate, SelfDeletingGraph, is_f_conforming
from sdpath.generate import random_instance
from sdpath.oracle import oracle_enumerate, oracle_exists, oracle_shortest


def brute_paths(inst):
    """Simple s-t paths of the multigraph-free input, filtered by conformity."""
    g = inst.graph
    G = nx.Graph()
    G.add_nodes_from(range(1, g.n + 1))
    G.add_edges_from(g.edges)
    if inst.s == inst.t:
        return [PathCertificate((inst.s,))]
    out = []
    for vs in nx.all_simple_paths(G, inst.s, inst.t):
        cert = PathCertificate.from_vertices(g, vs)
        if is_f_conforming(g, cert):
            out.append(cert)
    return out


def test_single_edge_self_deletion_is_no():
    g = SelfDeletingGraph.build(2, [(1, 2)], {1: [1]})
    assert oracle_exists(Instance(g, 1, 2)).is_no


def test_triangle_detour():
    # s=1, a=2, t=3: s deletes {s,t}; the detour through a survives
    g = SelfDeletingGraph.build(3, [(1, 2), (2, 3), (1, 3)], {1: [3]})
    out = oracle_exists(Instance(g, 1, 3))
    assert out.is_yes and out.certificate.vertices == (1, 2, 3)


def test_frozen_random_instance():
    inst = random_instance(12, 20, 2, 7)
    assert oracle_exists(inst).is_yes
    short = oracle_shortest(inst)
    assert short.certificate.vertices == (1, 4, 12)
    assert short.length == 3
    assert len(oracle_enumerate(inst)) == 29


def test_enumeration_matches_networkx_route():
    for seed in range(150):
        inst = corpus_instance(seed)
        mine = sorted(p.vertices for p in oracle_enumerate(inst))
        theirs = sorted(p.vertices for p in brute_paths(inst))
        assert mine == theirs, seed


def test_shortest_matches_minimum_of_enumeration():
    for seed in range(150):
        inst = corpus_instance(seed)
        paths = brute_paths(inst)
        out = oracle_shortest(inst)
        if not paths:
            assert out.is_no
        else:
            assert out.length == min(p.num_vertices for p in paths)
            assert is_f_conforming(inst.graph, out.certificate, require_simple=True)


def test_budget_turns_yes_into_no():
    inst = random_instance(12, 20, 2, 7)
    assert oracle_shortest(inst.with_budget(3)).is_yes
    assert oracle_shortest(inst.with_budget(2)).is_no


def test_expired_deadline_is_inconclusive():
    n = 14
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    g = SelfDeletingGraph.build(n, edges)
    # s deletes every edge at t, so the search has to exhaust a large clique
    g = g.with_deletions({1: [e for _, e in g.adjacency[n]]})
    inst = Instance(g, 1, n)
    out = oracle_shortest(inst, deadline=time.monotonic() - 1)
    assert not out.is_yes and not out.is_no


def test_enumerate_limit():
    inst = random_instance(12, 20, 2, 7)
    assert len(oracle_enumerate(inst, limit=5)) == 5
