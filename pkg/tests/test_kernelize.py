import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpora import clique_instance, corpus_instance, golden_cactus
from sdpath.core import Instance, SelfDeletingGraph, is_f_conforming
from sdpath.fen import feedback_edge_number
from sdpath.generate import random_connected_instance
from sdpath.kernelize import (
    KernelState,
    clique_k_bound,
    kernelize_fen,
    lift_certificate,
    rule_contract_chain,
    rule_remove_leaf,
    turing_split_universal,
)
from sdpath.oracle import oracle_exists, oracle_shortest


def test_leaf_rule_keeps_terminals():
    # path s=1 - 2 - t=3 with pendant 4 on vertex 2
    g = SelfDeletingGraph.build(4, [(1, 2), (2, 3), (2, 4)])
    state = KernelState(Instance(g, 1, 3))
    assert rule_remove_leaf(state)
    assert not rule_remove_leaf(state)


def test_chain_contracts_to_one_vertex():
    # a 6-cycle s=1 .. t=4; the side holding the feedback edge {6,1} stays put
    g = SelfDeletingGraph.build(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)])
    reduced, trace = kernelize_fen(Instance(g, 1, 4))
    assert reduced.graph.n == 5
    assert list(trace.chains.values()) == [(1, 2, 3, 4)]


def test_nonconforming_chain_is_dropped():
    # s=1, t=4; interior 2 deletes the chain edge {3,4}
    g = SelfDeletingGraph.build(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)], {2: [3]})
    state = KernelState(Instance(g, 1, 4))
    assert rule_contract_chain(state)
    reduced, _ = kernelize_fen(Instance(g, 1, 4))
    assert oracle_exists(reduced).is_yes


def test_cut_off_terminal():
    g = SelfDeletingGraph.build(4, [(1, 2), (3, 4)])
    reduced, trace = kernelize_fen(Instance(g, 1, 4))
    assert reduced.graph.n == 2 and reduced.graph.m == 0
    assert trace.kept is None
    with pytest.raises(ValueError):
        lift_certificate(trace, None)


def test_budget_rejected():
    g = SelfDeletingGraph.build(2, [(1, 2)])
    with pytest.raises(ValueError):
        kernelize_fen(Instance(g, 1, 2, 2))


def test_golden_cactus_round_trip():
    inst = golden_cactus()
    reduced, trace = kernelize_fen(inst)
    out = oracle_exists(reduced)
    assert out.is_yes
    lifted = lift_certificate(trace, out.certificate)
    assert is_f_conforming(inst.graph, lifted, require_simple=True)
    assert lifted.vertices[0] == 1 and lifted.vertices[-1] == 10


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_kernel_preserves_answer(seed):
    inst = corpus_instance(seed % 4000) if seed % 3 else random_connected_instance(
        30, 33, 2, seed)
    reduced, trace = kernelize_fen(inst)
    fen = feedback_edge_number(reduced.graph)
    assert reduced.graph.n <= 8 * fen + 4
    assert trace.replay() == reduced
    ref = oracle_exists(inst)
    got = oracle_exists(reduced)
    assert got.status == ref.status
    if got.is_yes:
        lifted = lift_certificate(trace, got.certificate)
        assert is_f_conforming(inst.graph, lifted, require_simple=True)
        assert (lifted.vertices[0], lifted.vertices[-1]) == (inst.s, inst.t)


def test_clique_bound():
    for seed in range(80):
        inst = clique_instance(seed)
        ref = oracle_shortest(inst)
        if ref.is_yes:
            assert ref.length <= clique_k_bound(inst)


def test_clique_bound_rejects_non_clique():
    g = SelfDeletingGraph.build(3, [(1, 2), (2, 3)])
    with pytest.raises(ValueError):
        clique_k_bound(Instance(g, 1, 3))


def test_universal_split_preserves_shortest():
    for seed in range(80):
        inst = clique_instance(seed)
        ref = oracle_shortest(inst)
        best = None
        for sub in turing_split_universal(inst):
            assert sub.instance.graph.n <= inst.graph.mu + 3
            out = oracle_shortest(sub.instance)
            if out.is_yes:
                lifted = sub.remap.lift(out.certificate)
                assert is_f_conforming(inst.graph, lifted, require_simple=True)
                best = lifted.num_vertices if best is None else min(best, lifted.num_vertices)
        if ref.is_no:
            assert best is None
        else:
            assert best == ref.length


def test_universal_split_needs_universal_source():
    g = SelfDeletingGraph.build(3, [(1, 2), (2, 3)])
    with pytest.raises(ValueError):
        turing_split_universal(Instance(g, 1, 3))
