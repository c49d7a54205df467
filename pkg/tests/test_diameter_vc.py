import math

import pytest
from conftest import complete, cycle, path, star
from hypothesis import given
from hypothesis import strategies as st

from streamgraph.accounting import MemoryLedger, PassMeter, budget_constant, log2n
from streamgraph.diameter_vc import bounded_bfs, diameter_multipass, diameter_onepass, twin_class_table
from streamgraph.errors import CoverViolationError, ModelMismatchError
from streamgraph.gadgets import build_gadget
from streamgraph.graph import Graph
from streamgraph.oracle import bfs_distances, exact_diameter
from streamgraph.planted import planted_vertex_cover
from streamgraph.stream import build_stream


def al(g, seed=None):
    return build_stream(g, "AL", seed, seed)


def test_star_center():
    m = PassMeter()
    res = bounded_bfs(al(star(4)), [1], 1, m, all_distances=True)
    assert res.distances == {1: 0, 2: 1, 3: 1, 4: 1, 5: 1}
    assert m.passes_used == 3


def test_path_five():
    res = bounded_bfs(al(path(5)), [2, 4], 1, all_distances=True)
    assert res.tracked[2] == 1 and res.tracked[4] == 3
    assert res.distances[3] == 2 and res.distances[5] == 4


def test_two_components():
    res = bounded_bfs(al(Graph(4, [(1, 2), (3, 4)])), [1, 3], 1)
    assert res.tracked[3] == math.inf
    assert res.eccentricity == math.inf


def test_requires_al():
    with pytest.raises(ModelMismatchError):
        bounded_bfs(build_stream(path(3), "EA"), [2], 1)
    with pytest.raises(ModelMismatchError):
        diameter_onepass(build_stream(path(3), "VA"), [2])


def test_cover_validation():
    with pytest.raises(CoverViolationError):
        diameter_multipass(al(path(4)), [1], validate=True)


def test_diameter_examples():
    assert diameter_multipass(al(complete(3)), [1, 2]) == 1
    assert diameter_onepass(al(path(3)), [2]) == 2
    assert diameter_onepass(al(cycle(4)), [1, 3]) == 2


@pytest.mark.parametrize("x, y, expected", [("10000", "00001", 4), ("10001", "00001", 3)])
def test_simple_va_restreamed(x, y, expected):
    inst = build_gadget("simple-va", x=x, y=y)
    X = inst.witnesses["vertex_cover"]
    s = al(inst.graph)
    assert diameter_multipass(s, X) == expected
    assert diameter_onepass(s, X) == expected


def test_twin_table_counts_all_vertices():
    inst = planted_vertex_cover(40, 3, seed=5)
    table = twin_class_table(al(inst.graph), inst.X)
    try:
        # classes cap at two, so the table can only undercount
        assert int(table.classes.sum()) <= 40 - 3
        q = table.quotient()
        assert exact_diameter(q) == exact_diameter(inst.graph)
    finally:
        table.release()


@given(st.integers(5, 120), st.integers(1, 5), st.integers(0, 10_000))
def test_solvers_match_oracle(n, k, seed):
    k = min(k, n)
    inst = planted_vertex_cover(n, k, seed)
    truth = exact_diameter(inst.graph)
    for solve in (diameter_multipass, diameter_onepass):
        m, led = PassMeter(), MemoryLedger()
        assert solve(al(inst.graph, seed), inst.X, m, led) == truth
        assert led.current_bits == 0
    if truth != math.inf:
        assert truth <= 2 * k


@given(st.integers(5, 80), st.integers(1, 4), st.integers(0, 10_000))
def test_round_prefix_claim(n, k, seed):
    inst = planted_vertex_cover(n, k, seed)
    v = 1 + seed % n
    truth = bfs_distances(inst.graph, v)
    bad = []

    def check(i, d):
        for w, dw in d.items():
            if truth[w] <= i and dw != truth[w]:
                bad.append((i, w))
            assert dw >= truth[w]

    m, led = PassMeter(), MemoryLedger()
    res = bounded_bfs(al(inst.graph, seed), inst.X, v, m, led, all_distances=True, on_round=check)
    assert not bad
    assert res.distances == truth
    assert m.passes_used <= 2 * k + 1
    assert led.peak_bits <= budget_constant() * k * log2n(n)


def test_fast_mode_agrees():
    for seed in range(10):
        inst = planted_vertex_cover(60, 4, seed)
        assert diameter_multipass(al(inst.graph), inst.X, fast=True) == exact_diameter(inst.graph)
