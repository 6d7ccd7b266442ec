import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpora import SAMPLE_FORMULA
from sdpath.generate import (
    CnfFormula,
    ColoredGraph,
    from_cnf,
    from_cubic_independent_set,
    from_multicolored_clique,
    has_independent_set,
    parse_dimacs,
    random_cnf,
    random_colored_graph,
    random_cubic_graph,
    random_instance,
)
from sdpath.oracle import oracle_exists, oracle_shortest
from sdpath.statespace import solve_statespace

K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def nx_graph(g):
    G = nx.Graph()
    G.add_nodes_from(range(1, g.n + 1))
    G.add_edges_from(g.edges)
    return G


def is_outerplanar(G):
    # outerplanar iff planar after adding a vertex adjacent to everything
    H = G.copy()
    H.add_edges_from(("apex", v) for v in G.nodes)
    return nx.check_planarity(H)[0]


def test_dimacs_round_trip():
    text = "c sample\np cnf 3 3\n1 -2 -3 0\n-1 2 -3 0\n-1 2 3 0\n"
    assert parse_dimacs(text) == CnfFormula(3, SAMPLE_FORMULA)


def test_dimacs_rejects_missing_header():
    with pytest.raises(ValueError):
        parse_dimacs("1 2 0\n")


def test_sample_formula_instance():
    inst = from_cnf(CnfFormula(3, SAMPLE_FORMULA))
    g = inst.graph
    assert (g.n, g.m, g.mu) == (30, 38, 2)
    out = oracle_shortest(inst)
    assert out.is_yes and out.length == 21


def test_contradiction_is_no():
    f = CnfFormula(1, ((1,), (-1,)))
    assert oracle_exists(from_cnf(f)).is_no
    assert oracle_exists(from_cnf(f, split_deletions=True)).is_no


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(1, 6), st.integers(1, 3),
       st.booleans())
def test_cnf_equivalence_and_shape(seed, nv, nc, width, split):
    formula = random_cnf(nv, nc, width, seed)
    inst = from_cnf(formula, split)
    G = nx_graph(inst.graph)
    assert max(d for _, d in G.degree) <= 3
    assert nx.is_bipartite(G)
    assert is_outerplanar(G)
    if split:
        assert inst.graph.mu <= 1
    out = solve_statespace(inst, max_types=64)
    if out.status.name == "INCONCLUSIVE":
        out = oracle_exists(inst)
    assert out.is_yes == (formula.brute_force_sat() is not None)


def test_colored_graph_partition_check():
    with pytest.raises(ValueError):
        ColoredGraph(3, (), ((1,), (2,)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 3), st.floats(0.3, 0.9), st.booleans())
def test_multicolored_clique_equivalence(seed, k, p, split):
    cg = random_colored_graph(2 * k, k, p, seed)
    inst = from_multicolored_clique(cg, split)
    if split:
        assert inst.graph.mu <= 1
    assert oracle_exists(inst).is_yes == cg.has_multicolored_clique()


def test_k4_independent_set():
    yes = from_cubic_independent_set(4, K4, 1)
    assert yes.graph.n == 33 and yes.max_vertices == 20
    assert oracle_shortest(yes).is_yes
    assert oracle_shortest(from_cubic_independent_set(4, K4, 2)).is_no


def test_rejects_non_cubic():
    with pytest.raises(ValueError):
        from_cubic_independent_set(3, [(1, 2), (2, 3)], 1)


@pytest.mark.parametrize("seed", range(6))
def test_cubic_independent_set_equivalence(seed):
    edges = random_cubic_graph(6, seed)
    for k in range(1, 4):
        inst = from_cubic_independent_set(6, edges, k)
        out = solve_statespace(inst, max_types=64)
        assert out.is_yes == has_independent_set(6, edges, k)


def test_random_generators_are_seeded():
    assert random_instance(9, 12, 2, 5) == random_instance(9, 12, 2, 5)
    assert random_cnf(5, 7, 3, 1) == random_cnf(5, 7, 3, 1)
    G = nx.Graph(random_cubic_graph(10, 4))
    assert all(d == 3 for _, d in G.degree)
