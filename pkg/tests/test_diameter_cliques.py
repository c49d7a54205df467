import math

import pytest
from conftest import complete
from hypothesis import given
from hypothesis import strategies as st

from streamgraph.accounting import MemoryLedger, PassMeter, budget_constant, log2n
from streamgraph.diameter_cliques import (
    bounded_bfs_cliques,
    clique_id_of,
    diameter_multipass_cliques,
    diameter_onepass_cliques,
)
from streamgraph.errors import PartitionError
from streamgraph.gadgets import build_gadget
from streamgraph.graph import Graph
from streamgraph.oracle import bfs_distances, exact_diameter
from streamgraph.planted import planted_cliques
from streamgraph.stream import VertexItem, build_stream


def al(g, seed=None):
    return build_stream(g, "AL", seed, seed)


# cliques {1,2,3} and {4,5,6} joined through 7, which touches 1 and 4
BRIDGED = Graph(7, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (7, 1), (7, 4)])


def test_clique_ids():
    g = Graph(7, [(2, 5), (2, 7), (5, 7)])
    for it in al(g).begin_pass():
        if it.v in (2, 5, 7):
            assert clique_id_of(it, []) == 2
    assert clique_id_of(VertexItem(9, ()), []) == 9


def test_clique_ids_match_planted_partition():
    inst = planted_cliques(60, 2, 3, seed=4)
    owner = {v: min(c) for c in inst.cliques for v in c}
    for it in al(inst.graph, 3).begin_pass():
        if it.v not in inst.X:
            assert clique_id_of(it, inst.X) == owner[it.v]


def test_single_clique_distances():
    res = bounded_bfs_cliques(al(complete(5)), [], 3, 1, all_distances=True)
    assert max(res.distances.values()) <= 1


def test_bridged_cliques():
    res = bounded_bfs_cliques(al(BRIDGED), [7], 2, 2, all_distances=True)
    assert res.distances == bfs_distances(BRIDGED, 2)
    assert res.distances[5] == res.distances[6] == 4
    assert diameter_multipass_cliques(al(BRIDGED), [7], 2) == exact_diameter(BRIDGED)
    assert diameter_onepass_cliques(al(BRIDGED), [7], 2) == exact_diameter(BRIDGED)


def test_clique_va_restreamed():
    inst = build_gadget("clique-va", x="110", y="011")
    X = inst.witnesses["clique_after_removal"]
    a = X[0]
    res = bounded_bfs_cliques(al(inst.graph), X, a, 1)
    assert res.eccentricity <= 2


def test_diameter_examples():
    two = Graph(6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
    assert diameter_multipass_cliques(al(two), [], 2) == math.inf
    assert diameter_onepass_cliques(al(two), [], 2) == math.inf
    assert diameter_multipass_cliques(al(complete(6)), [], 1) == 1
    assert diameter_onepass_cliques(al(Graph(1)), [], 1) == 0
    inst = planted_cliques(60, 2, 3, seed=11)
    assert diameter_multipass_cliques(al(inst.graph), inst.X, 3) == exact_diameter(inst.graph)


def test_partition_errors():
    with pytest.raises(PartitionError):
        diameter_multipass_cliques(al(Graph(3, [(1, 2), (2, 3)])), [], 2)
    two = Graph(4, [(1, 2), (3, 4)])
    with pytest.raises(PartitionError):
        diameter_onepass_cliques(al(two), [], 1)


@given(st.integers(3, 150), st.integers(0, 4), st.integers(1, 5), st.integers(0, 10_000))
def test_solvers_match_oracle(n, k, ell, seed):
    k = min(k, n - 1)
    inst = planted_cliques(n, k, ell, seed)
    truth = exact_diameter(inst.graph)
    results = set()
    for order in (None, seed, seed + 1):
        for solve in (diameter_multipass_cliques, diameter_onepass_cliques):
            m, led = PassMeter(), MemoryLedger()
            results.add(solve(al(inst.graph, order), inst.X, ell, m, led))
            assert led.current_bits == 0
    assert results == {truth}
    if truth != math.inf:
        assert truth <= 3 * max(k, 1) + 1


@given(st.integers(3, 80), st.integers(1, 3), st.integers(1, 4), st.integers(0, 10_000))
def test_bounded_bfs_budgets(n, k, ell, seed):
    k = min(k, n - 1)
    inst = planted_cliques(n, k, ell, seed)
    v = 1 + seed % n
    m, led = PassMeter(), MemoryLedger()
    res = bounded_bfs_cliques(al(inst.graph, seed), inst.X, v, ell, m, led, all_distances=True)
    assert res.distances == bfs_distances(inst.graph, v)
    assert m.passes_used <= 3 * k + 2
    assert led.peak_bits <= budget_constant() * (k + ell) * log2n(n)
