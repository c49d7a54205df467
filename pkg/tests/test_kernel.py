import random

import pytest
from conftest import complete, cycle, path, star
from hypothesis import given
from hypothesis import strategies as st

from streamgraph.accounting import MemoryLedger, PassMeter, budget_constant, log2n
from streamgraph.errors import MatchingOverflowError, ModelMismatchError
from streamgraph.graph import Graph
from streamgraph.kernel import (
    KERNEL_PASS_C,
    Matching,
    bipartite_double,
    buss_goldsmith,
    double_graph,
    find_augmenting_path,
    greedy_maximal_matching,
    kernelize,
    koenig_cover,
    maximum_matching,
    nt_sets,
)
from streamgraph.oracle import is_cover, reference_max_matching, vc_decision
from streamgraph.stream import EdgeItem, GraphStream, StreamModel, build_stream, stream_to_graph


def cover_graph(n: int, k: int, seed: int) -> Graph:
    """Random graph whose edges all touch a random set of about k vertices."""
    rng = random.Random(seed)
    X = rng.sample(range(1, n + 1), min(n, rng.randint(0, k + 2)))
    g = Graph(n)
    for x in X:
        for _ in range(rng.randint(0, 3 * k + 3)):
            y = rng.randint(1, n)
            if y != x and not g.has_edge(x, y):
                g.add_edge(x, y)
    return g


def doubled(g: Graph, model="AL", seed=None):
    return bipartite_double(build_stream(g, model, seed, seed))


# -- Buss-Goldsmith -------------------------------------------------------------


def test_buss_star():
    res = buss_goldsmith(build_stream(star(10), "AL"), 1)
    assert res.S == (1,) and res.k1 == 0 and res.verdict == "KERNEL"
    assert list(res.kernel.begin_pass()) == []


def test_buss_k5():
    for model in ("AL", "EA", "VA"):
        assert buss_goldsmith(build_stream(complete(5), model), 2).is_no


def test_buss_empty():
    res = buss_goldsmith(build_stream(Graph(3), "AL"), 0)
    assert res.verdict == "KERNEL" and list(res.kernel.begin_pass()) == []


def test_buss_pass_counts():
    g = cover_graph(80, 3, 1)
    for model, passes in (("AL", 2), ("EA", 4), ("VA", 4)):
        m = PassMeter()
        res = buss_goldsmith(build_stream(g, model), 3, m)
        if not res.is_no:
            list(res.kernel.begin_pass(m))
            assert m.passes_used == passes


@given(st.integers(2, 120), st.integers(0, 6), st.integers(0, 10_000), st.sampled_from(["AL", "EA", "VA"]))
def test_buss_invariants(n, k, seed, model):
    g = cover_graph(n, k, seed)
    led = MemoryLedger()
    res = buss_goldsmith(build_stream(g, model, seed, seed), k, ledger=led)
    assert led.current_bits == 0
    if res.is_no:
        assert not vc_decision(g, k)
        return
    assert len(res.S) <= k
    assert all(g.degree(v) > res.threshold for v in res.S)
    touching = sum(1 for u, v in g.edges() if u in res.S or v in res.S)
    assert res.m_removed == touching
    kernel = stream_to_graph(res.kernel)
    assert kernel.m == g.m - touching <= res.threshold * res.k1
    assert vc_decision(kernel, res.k1) == vc_decision(g, k)


# -- doubling and matchings -----------------------------------------------------


def test_double_examples():
    assert stream_to_graph(doubled(Graph(2, [(1, 2)]))).edges() == [(1, 4), (2, 3)]
    b = stream_to_graph(doubled(complete(3), "EA"))
    assert b.m == 6 and all(b.degree(v) == 2 for v in b.vertices())
    assert len(reference_max_matching(b)) == 3
    assert stream_to_graph(doubled(Graph(2))).m == 0
    with pytest.raises(ModelMismatchError):
        bipartite_double(build_stream(path(3), "VA"))


def test_double_al_order():
    items = list(doubled(path(3)).begin_pass())
    assert [it.v for it in items] == [1, 2, 3, 4, 5, 6]


def test_greedy_examples():
    s = GraphStream(StreamModel.EA, 4, [EdgeItem(1, 4), EdgeItem(2, 4)], validate=False)
    assert greedy_maximal_matching(s).size == 1
    assert greedy_maximal_matching(doubled(Graph(4, [(1, 2), (3, 4)]))).size == 4
    # P4 as a bipartite graph 1-3-2-4 with the middle edge first
    s = GraphStream(StreamModel.EA, 4, [EdgeItem(2, 3), EdgeItem(1, 3), EdgeItem(2, 4)])
    assert greedy_maximal_matching(s).edges() == [(2, 3)]


def test_greedy_overflow():
    with pytest.raises(MatchingOverflowError):
        greedy_maximal_matching(doubled(Graph(6, [(1, 2), (3, 4), (5, 6)])), bound=3)


def c6_bipartite():
    # C6 with left side 1..3 and right side 4..6: 1-4-2-5-3-6-1
    return Graph(6, [(1, 4), (4, 2), (2, 5), (5, 3), (3, 6), (6, 1)])


@pytest.mark.parametrize("model", ["AL", "EA"])
def test_augmenting_path_on_c6(model):
    s = build_stream(c6_bipartite(), model)
    M = Matching(3)
    M.add(2, 4)
    M.add(3, 5)
    path_ = find_augmenting_path(s, M)
    assert len(path_) == 6
    assert path_[0] == 1 and path_[-1] == 6


def test_augmenting_path_none_and_single_edge():
    s = build_stream(c6_bipartite(), "AL")
    full = Matching(3)
    for x, y in reference_max_matching(c6_bipartite(), [1, 2, 3]):
        full.add(x, y)
    assert find_augmenting_path(s, full) is None
    single = build_stream(Graph(2, [(1, 2)]), "EA")
    assert find_augmenting_path(single, Matching(1)) == [1, 2]


def test_maximum_matching_examples():
    assert maximum_matching(doubled(cycle(4)), 4).size == 4
    assert maximum_matching(doubled(star(5)), 1).size == 2
    assert maximum_matching(doubled(Graph(3)), 0).size == 0
    with pytest.raises(MatchingOverflowError):
        maximum_matching(doubled(cycle(4)), 1)


def test_koenig_examples():
    two = Graph(4, [(1, 3), (2, 4)])
    s = build_stream(two, "AL")
    M = maximum_matching(s, 2)
    cover = koenig_cover(s, M)
    assert len(cover) == 2 and is_cover(two, cover)
    assert koenig_cover(doubled(Graph(2)), Matching(2)) == set()
    b = doubled(path(3))
    cover = koenig_cover(b, maximum_matching(b, 2))
    assert len(cover) == 2 and is_cover(double_graph(path(3)), cover)


def test_koenig_rejects_non_maximum():
    s = build_stream(c6_bipartite(), "AL")
    M = Matching(3)
    M.add(2, 4)
    with pytest.raises(ValueError):
        koenig_cover(s, M)


def test_nt_sets():
    assert nt_sets({2, 2 + 5}, 5).C0 == {2}
    only = nt_sets({2}, 5)
    assert only.C0 == set() and only.V0 == {2}
    nt = nt_sets({7}, 5)
    assert nt.V0 == {2}


@given(st.integers(1, 14), st.floats(0, 0.5), st.integers(0, 10_000), st.sampled_from(["AL", "EA"]))
def test_matching_and_koenig_against_reference(n, p, seed, model):
    rng = random.Random(seed)
    g = Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p])
    bg = double_graph(g)
    ref = len(reference_max_matching(bg, range(1, n + 1)))
    b = doubled(g, model, seed)
    m, led = PassMeter(), MemoryLedger()
    M = maximum_matching(b, max(ref, 1), m, led)
    assert M.size == ref and M.is_valid_in(bg)
    cover = koenig_cover(b, M, m, led)
    assert len(cover) == M.size and is_cover(bg, cover)
    assert led.current_bits == 0


def test_koenig_on_kernel_gives_nt_bound():
    # |V0| + |C0| <= 2k for a YES instance with optimum k
    g = complete(3)
    b = doubled(g)
    nt = nt_sets(koenig_cover(b, maximum_matching(b, 3)), 3)
    assert not nt.C0 & nt.V0
    assert len(nt.V0) + len(nt.C0) <= 2 * 2


# -- full pipeline --------------------------------------------------------------


def test_kernelize_examples():
    g = Graph(9, [(1, i) for i in range(2, 8)] + [(8, 9)])
    for model in ("AL", "EA", "VA"):
        out = kernelize(build_stream(g, model), 2)
        assert out.verdict == "KERNEL"
        assert out.graph.n <= 4
        assert vc_decision(out.graph, out.k_prime) == vc_decision(g, 2)
        nope = kernelize(build_stream(Graph(6, [(1, 2), (3, 4), (5, 6)]), model), 2)
        assert nope.is_no
    empty = kernelize(build_stream(Graph(4), "AL"), 0)
    assert empty.verdict == "KERNEL" and empty.graph.n == 0 and empty.k_prime == 0
    assert kernelize(build_stream(complete(5), "AL"), 2).is_no


def test_kernel_stream_and_provenance():
    g = cover_graph(60, 3, 7)
    out = kernelize(build_stream(g, "EA"), 4)
    prov = out.provenance()
    assert prov["pass_constant"] == KERNEL_PASS_C
    assert set(prov) >= {"verdict", "S", "C0", "k_prime", "passes", "peak_bits"}
    if out.graph is not None:
        assert out.stream().model is StreamModel.EA


def test_cached_mode_reports_same_passes():
    for seed in range(6):
        g = cover_graph(100, 4, seed)
        for model in ("AL", "EA"):
            a = kernelize(build_stream(g, model, seed), 4)
            b = kernelize(build_stream(g, model, seed), 4, cached=True)
            assert (a.verdict, a.passes, a.V0) == (b.verdict, b.passes, b.V0)


@given(st.integers(2, 200), st.integers(0, 6), st.integers(0, 10_000), st.sampled_from(["AL", "EA", "VA"]))
def test_answer_preservation(n, k, seed, model):
    g = cover_graph(n, k, seed)
    m, led = PassMeter(), MemoryLedger()
    out = kernelize(build_stream(g, model, seed, seed), k, m, led, cached=True)
    truth = vc_decision(g, k)
    if out.is_no:
        assert not truth
    else:
        assert out.graph.n <= 2 * out.k_prime
        assert vc_decision(out.graph, out.k_prime) == truth
    kk = max(k, 1)
    exp = 2 if out.model is StreamModel.AL else 3
    assert out.passes <= KERNEL_PASS_C * (kk + 1) ** exp
    assert led.current_bits == 0
    assert led.peak_bits <= budget_constant() * kk * log2n(max(kk * kk, 2 * n))


@given(st.integers(2, 80), st.integers(1, 5), st.integers(0, 10_000))
def test_order_invariance(n, k, seed):
    g = cover_graph(n, k, seed)
    answers = set()
    for order in range(5):
        out = kernelize(build_stream(g, "AL", order, order + 7), k, cached=True)
        answers.add(False if out.is_no else vc_decision(out.graph, out.k_prime))
    assert len(answers) == 1
