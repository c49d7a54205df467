from collections import Counter

import pytest
from conftest import complete, graphs, path
from hypothesis import given
from hypothesis import strategies as st

from streamgraph.accounting import MemoryLedger, PassMeter, vertex_id_bits
from streamgraph.errors import BudgetExceededError, GraphFormatError
from streamgraph.graph import Graph, graph_to_text, parse_graph
from streamgraph.stream import (
    EdgeItem,
    GraphStream,
    StreamModel,
    VertexItem,
    build_stream,
    reconstruct_edges,
    trace_lines,
)

MODELS = list(StreamModel)


def test_triangle_al_has_six_slots():
    s = build_stream(complete(3), "AL", 1, 2)
    items = list(s.begin_pass())
    assert len(items) == 3
    assert sum(len(it.neighbors) for it in items) == 6


def test_triangle_ea_has_three_edges():
    s = build_stream(complete(3), "EA")
    assert len(list(s.begin_pass())) == 3


def test_path_va_natural_order():
    s = build_stream(path(3), "VA")
    assert list(s.begin_pass()) == [VertexItem(1, ()), VertexItem(2, (1,)), VertexItem(3, (2,))]


def test_rejects_self_loop_and_duplicates():
    with pytest.raises(GraphFormatError):
        Graph(3, [(1, 1)])
    with pytest.raises(GraphFormatError):
        Graph(3, [(1, 2), (2, 1)])
    with pytest.raises(GraphFormatError):
        Graph.from_pairs(3, [(1, 2), (1, 2)])
    with pytest.raises(GraphFormatError):
        Graph.from_pairs(3, [(1, 4)])


def test_invalid_streams_rejected():
    with pytest.raises(GraphFormatError):
        GraphStream("AL", 2, [VertexItem(1, (2,)), VertexItem(2, ())])
    with pytest.raises(GraphFormatError):
        GraphStream("VA", 2, [VertexItem(1, (2,)), VertexItem(2, ())])
    with pytest.raises(GraphFormatError):
        GraphStream("EA", 2, [EdgeItem(1, 2), EdgeItem(2, 1)])


def test_pass_budget():
    s = build_stream(path(4), "AL")
    m = PassMeter(budget=2)
    first = list(s.begin_pass(m))
    second = list(s.begin_pass(m))
    assert first == second
    with pytest.raises(BudgetExceededError):
        s.begin_pass(m)
    assert m.passes_used == 2


def test_ledger_charges():
    led = MemoryLedger()
    c = led.vertex_ids(1000)
    assert c.bits == 10 == vertex_id_bits(1000)
    f = led.flags()
    assert f.bits == 1
    c.release()
    f.release()
    assert led.current_bits == 0 and led.peak_bits == 11
    assert led.counters(7).bits == 3


def test_ledger_budget():
    led = MemoryLedger(budget_bits=5)
    with pytest.raises(BudgetExceededError):
        led.charge(6)


def test_graph_file_round_trip():
    g = Graph(5, [(1, 3), (2, 5), (4, 5)])
    text = graph_to_text(g)
    assert text.splitlines()[0] == "5 3"
    assert parse_graph(text) == g
    with pytest.raises(GraphFormatError):
        parse_graph("3 1\n2 1\n")
    with pytest.raises(GraphFormatError):
        parse_graph("3 2\n1 2\n")


def test_trace_lines():
    s = build_stream(path(2), "AL")
    assert trace_lines(s.begin_pass()) == ["V 1: 2", "V 2: 1"]
    assert s.trace_lines() == ["V 1: 2", "V 2: 1"]


@given(graphs(), st.sampled_from(MODELS), st.integers(0, 9), st.integers(0, 9))
def test_reconstruct_edges_any_order(g, model, vs, ns):
    s = build_stream(g, model, vs, ns)
    assert reconstruct_edges(model, s.begin_pass()) == g.edges()


@given(graphs(), st.integers(0, 9), st.integers(0, 9))
def test_al_double_sight(g, vs, ns):
    items = {it.v: set(it.neighbors) for it in build_stream(g, "AL", vs, ns).begin_pass()}
    for v, nbrs in items.items():
        for u in nbrs:
            assert v in items[u]


@given(graphs(), st.integers(0, 9))
def test_va_reveals_at_later_endpoint(g, vs):
    seen = set()
    for it in build_stream(g, "VA", vs).begin_pass():
        assert set(it.neighbors) <= seen
        seen.add(it.v)


@given(graphs(), st.sampled_from(MODELS), st.integers(0, 5), st.integers(1, 6))
def test_meter_counts_every_pass(g, model, seed, passes):
    s = build_stream(g, model, seed)
    m = PassMeter()
    for _ in range(passes):
        list(s.begin_pass(m))
    assert m.passes_used == passes


@given(graphs(max_n=10), st.integers(0, 50))
def test_build_is_deterministic(g, seed):
    a = build_stream(g, "AL", seed, seed + 1).items
    b = build_stream(g, "AL", seed, seed + 1).items
    assert a == b
    assert Counter(it.v for it in a) == Counter(g.vertices())
