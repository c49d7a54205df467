import math
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from streamgraph.bench import random_gadget_inputs
from streamgraph.errors import GadgetInputError
from streamgraph.gadgets import (
    DISJ_KINDS,
    PERM_KINDS,
    GadgetKind,
    PermInput,
    all_inputs,
    build_gadget,
    check_handoff,
    expected_vertices,
    interleave_mutant,
    read_sidecar,
    validate_handoff,
    verify_dichotomy,
    write_sidecar,
)
from streamgraph.gadgets.core import ALICE, BOB
from streamgraph.oracle import exact_diameter, is_connected
from streamgraph.stream import validate_items

ALL_KINDS = list(GadgetKind)
# kinds whose stated dichotomy the oracle confirms at every size tried
SOUND_KINDS = [k for k in ALL_KINDS if k not in (GadgetKind.QUADRATIC, GadgetKind.QUADRATIC_BIPARTITE)]


def nx_diameter(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges())
    return nx.diameter(h) if nx.is_connected(h) else math.inf


def small_n(kind):
    return 2 if kind.is_perm else 3


def test_kind_parsing():
    assert GadgetKind.parse("Simple_AL") is GadgetKind.SIMPLE_AL
    assert GadgetKind.parse("cyclesperm") is GadgetKind.CYCLES_PERM
    with pytest.raises(GadgetInputError):
        GadgetKind.parse("nope")
    assert len(DISJ_KINDS) == 13 and len(PERM_KINDS) == 3


def test_simple_va_example():
    inst = build_gadget("simple-va", x="110", y="001")
    assert inst.graph.n == 6
    assert exact_diameter(inst.graph) == 4
    assert inst.answer_yes


def test_simple_va_handoff_roles():
    inst = build_gadget("simple-va", x="110", y="001")
    assert inst.owners == (ALICE,) * 5 + (BOB,)
    b_vertex = inst.items[-1].v
    assert inst.items[-1].neighbors == tuple(sorted(inst.graph.neighbors(b_vertex)))


def test_cycles_example():
    inst = build_gadget("cycles", x="11", y="11")
    assert inst.graph.n == 20
    assert not is_connected(inst.graph)


def test_diamond_single_bit_value():
    # the n=1 instance is too small for the construction: no second index exists
    inst = build_gadget("diamond", x="1", y="1")
    assert inst.graph.n == 13
    assert exact_diameter(inst.graph) == nx_diameter(inst.graph) == 6
    assert not verify_dichotomy(inst).claim_holds


def test_diamond_from_two_bits_on():
    for inp in all_inputs(GadgetKind.DIAMOND, 2):
        assert verify_dichotomy(build_gadget("diamond", **inp)).ok


def test_quadratic_values():
    # n = 1 separates; from n = 2 on the tails t_i, t_j sit at distance 6 for every input
    assert exact_diameter(build_gadget("quadratic", x="0", y="1").graph) == 4
    assert exact_diameter(build_gadget("quadratic", x="1", y="1").graph) == 5
    yes = build_gadget("quadratic", x="1000", y="0100")
    assert yes.answer_yes and exact_diameter(yes.graph) == nx_diameter(yes.graph) == 6


def test_quadratic_bipartite_values():
    # YES instances reach 9 at n = 1 and 12 at n = 2; all-ones on both sides disconnects
    assert exact_diameter(build_gadget("quadratic-bipartite", x="0", y="0").graph) == 7
    assert exact_diameter(build_gadget("quadratic-bipartite", x="1", y="0").graph) == 9
    assert exact_diameter(build_gadget("quadratic-bipartite", x="1", y="1").graph) == math.inf
    g = build_gadget("quadratic-bipartite", x="0000", y="0000").graph
    assert exact_diameter(g) == nx_diameter(g) == 12


def test_perm_examples():
    n = 2
    yes_j = next(j for j in (1, 2) if PermInput((1, 2), j).answer_yes)
    no_j = next(j for j in (1, 2) if not PermInput((1, 2), j).answer_yes)
    assert exact_diameter(build_gadget("windmill-perm", pi=[1, 2], j=yes_j).graph) >= 14
    assert is_connected(build_gadget("cycles-perm", pi=[1, 2], j=no_j).graph)
    for inp in all_inputs(GadgetKind.DIAMOND_PERM, n):
        inst = build_gadget("diamond-perm", **inp)
        if not inst.answer_yes:
            assert exact_diameter(inst.graph) <= 9


def test_perm_index_formula():
    p = PermInput((3, 1, 4, 2), 3)
    assert p.psi == 2 and p.gamma == 1
    # pi(2) = 1 is written 00, so its first bit is 0
    assert not p.answer_yes
    with pytest.raises(GadgetInputError):
        PermInput((1, 2, 3), 1)
    with pytest.raises(GadgetInputError):
        PermInput((1, 2), 3)
    with pytest.raises(GadgetInputError):
        PermInput((1, 1), 1)


def test_input_errors():
    with pytest.raises(GadgetInputError):
        build_gadget("simple-al", x="000", y="101")
    with pytest.raises(GadgetInputError):
        build_gadget("cycles", x="10", y="101")
    with pytest.raises(GadgetInputError):
        build_gadget("quadratic", x="101", y="101")
    with pytest.raises(GadgetInputError):
        build_gadget("windmill", x="1a", y="10")


@pytest.mark.parametrize("kind", ALL_KINDS, ids=str)
def test_size_formula_and_model(kind):
    for seed in range(3):
        for n in (small_n(kind), 4 if kind.is_perm else 5):
            inst = build_gadget(kind, **random_gadget_inputs(kind, n, seed))
            assert inst.graph.n == expected_vertices(kind, n)
            validate_items(inst.model, inst.graph.n, inst.items)
            assert inst.claim.exclusive()


@pytest.mark.parametrize("kind", SOUND_KINDS, ids=str)
def test_exhaustive_small(kind):
    ns = (2,) if kind.is_perm else (2, 3)
    for n in ns:
        for inp in all_inputs(kind, n):
            rep = verify_dichotomy(build_gadget(kind, **inp))
            assert rep.ok, rep


@pytest.mark.parametrize("kind", ALL_KINDS, ids=str)
def test_handoff_and_mutant(kind):
    for seed in range(3):
        inst = build_gadget(kind, **random_gadget_inputs(kind, small_n(kind) * 2, seed))
        rep = check_handoff(inst, seed)
        assert rep.ok, rep.problems
        assert rep.switches == 1
        assert not validate_handoff(interleave_mutant(inst))


def test_handoff_detects_leaky_builder(monkeypatch):
    from streamgraph.gadgets import disj

    original = disj.BUILDERS[GadgetKind.SIMPLE_VA]

    def leaky(n, x, y):
        b, model, claim, wit = original(n, x, y)
        # Alice's first two items now depend on Bob's first bit
        if y[0]:
            b.order = [b.order[1], b.order[0]] + b.order[2:]
        return b, model, claim, wit

    monkeypatch.setitem(disj.BUILDERS, GadgetKind.SIMPLE_VA, leaky)
    inst = build_gadget("simple-va", x="1010", y="1001")
    assert not validate_handoff(inst)


def test_sidecar_round_trip(tmp_path):
    inst = build_gadget("windmill-perm", pi=[2, 1, 4, 3], j=5)
    path = tmp_path / "w.json"
    write_sidecar(inst, path)
    data = read_sidecar(path)
    assert data["kind"] == "windmill-perm"
    assert data["input"] == {"pi": [2, 1, 4, 3], "j": 5}
    assert data["vertices"] == 36
    assert data["claim"]["problem"] == "diameter"


@given(st.sampled_from(SOUND_KINDS), st.integers(0, 10_000))
def test_random_inputs_keep_claims(kind, seed):
    n = random.Random(seed).choice([4, 8]) if kind.is_perm else random.Random(seed).randint(2, 12)
    rep = verify_dichotomy(build_gadget(kind, **random_gadget_inputs(kind, n, seed)))
    assert rep.ok, rep
