"""Reductions from two-party Disjointness.

Alice holds ``x``, Bob holds ``y`` (n bits each, n*n bits for the quadratic
gadgets).  The answer is YES when no index has x_i = y_i = 1.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import GadgetInputError
from ..stream import StreamModel
from .core import (
    ALICE,
    BOB,
    Builder,
    DichotomyClaim,
    GadgetInstance,
    GadgetKind,
    bits_to_str,
    disjoint,
    parse_bits,
)

AL, VA = StreamModel.AL, StreamModel.VA


def _diam(yes: tuple, no: tuple) -> DichotomyClaim:
    return DichotomyClaim("diameter", yes, no)


# connected exactly when the strings are disjoint
_CONN = DichotomyClaim("connectivity", ("==", True), ("==", False))


def simple_va(n: int, x, y):
    b = Builder()
    b.add(*(("v", i) for i in range(1, n + 1)), "c", "a", "b")
    for i in range(1, n + 1):
        b.edge("c", ("v", i))
        if x[i - 1]:
            b.edge("a", ("v", i))
        if y[i - 1]:
            b.edge("b", ("v", i))
    b.reveal(ALICE, [("v", i) for i in range(1, n + 1)] + ["c", "a"])
    b.reveal(BOB, ["b"])
    mod = b.ids_of(["a", "b", "c"])
    return b, VA, _diam(("==", 4), ("<=", 3)), {"vertex_cover": mod}


def clique_va(n: int, x, y):
    b = Builder()
    vs = [("v", i) for i in range(0, n + 2)]
    b.add(*vs, "a", "b")
    for i, p in enumerate(vs):
        for q in vs[i + 1 :]:
            b.edge(p, q)
    b.edge("a", ("v", 0))
    b.edge("b", ("v", n + 1))
    for i in range(1, n + 1):
        if x[i - 1]:
            b.edge("a", ("v", i))
        if y[i - 1]:
            b.edge("b", ("v", i))
    b.reveal(ALICE, vs + ["a"])
    b.reveal(BOB, ["b"])
    return b, VA, _diam((">=", 3), ("==", 2)), {"clique_after_removal": b.ids_of(["a", "b"])}


def simple_al(n: int, x, y):
    b = Builder()
    b.add("a", "c", *(("l", i) for i in range(1, n + 1)), "b", *(("r", i) for i in range(1, n + 1)))
    for i in range(1, n + 1):
        b.edge(("l", i), ("r", i))
        b.edge("c", ("l", i))
        b.edge("c", ("r", i))
        if x[i - 1]:
            b.edge("a", ("l", i))
        if y[i - 1]:
            b.edge("b", ("r", i))
    b.reveal(ALICE, ["a", "c"] + [("l", i) for i in range(1, n + 1)])
    b.reveal(BOB, ["b"] + [("r", i) for i in range(1, n + 1)])
    abc = b.ids_of(["a", "b", "c"])
    return b, AL, _diam(("==", 4), ("<=", 3)), {
        "matching_after_removal": abc,
        "dominating_set": abc,
        "diameter_after_removal": {"removed": b.ids_of(["a", "b"]), "at_most": 2},
    }


def windmill(n: int, x, y):
    b = Builder()
    path = [("p", t) for t in range(1, 7)]
    b.add(*path)
    for i in range(1, n + 1):
        b.add(("a", i, 2), ("a", i, 3), ("b", i, 1), ("b", i, 2), ("b", i, 3))
    for s, t in zip(path, path[1:]):
        b.edge(s, t)
    center = path[0]
    for i in range(1, n + 1):
        a1, a2, a3 = center, ("a", i, 2), ("a", i, 3)
        b1, b2, b3 = ("b", i, 1), ("b", i, 2), ("b", i, 3)
        b.edge(a3, b1)
        b.edge(a1, a2)
        b.edge(a2 if x[i - 1] else a1, a3)
        b.edge(b1, b2)
        b.edge(b2 if y[i - 1] else b1, b3)
    b.reveal(ALICE, path + [("a", i, t) for i in range(1, n + 1) for t in (2, 3)])
    b.reveal(BOB, [("b", i, t) for i in range(1, n + 1) for t in (1, 2, 3)])
    return b, AL, _diam(("<=", 9), (">=", 10)), {"tree": True}


def diamond(n: int, x, y):
    b = Builder()
    b.add("a", "b", *(("c", i) for i in range(0, n + 1)))
    for i in range(1, n + 1):
        b.add(*(("p", i, t) for t in range(1, 10)))
    b.edge("a", "b")
    for i in range(0, n + 1):
        b.edge("a", ("c", i))
        b.edge("b", ("c", i))
    for i in range(1, n + 1):
        for t in range(1, 9):
            b.edge(("p", i, t), ("p", i, t + 1))
        b.edge(("c", i - 1), ("p", i, 1))
        b.edge(("p", i, 9), ("c", i))
        if not x[i - 1]:
            b.edge("a", ("p", i, 2))
            b.edge("a", ("p", i, 6))
        if not y[i - 1]:
            b.edge("b", ("p", i, 4))
            b.edge("b", ("p", i, 8))
    bob = {("p", i, t) for i in range(1, n + 1) for t in (4, 8)} | {"b"}
    b.reveal(ALICE, [name for name in b.ids if name not in bob])
    b.reveal(BOB, ["b"] + [("p", i, t) for i in range(1, n + 1) for t in (4, 8)])
    return b, AL, _diam(("<=", 7), (">=", 8)), {"path_after_removal": b.ids_of(["a", "b"])}


def split(n: int, x, y):
    b = Builder()
    clique_a = [("a", i) for i in range(0, n + 1)]
    clique_b = [("b", i) for i in range(0, n + 1)]
    ind_a = [("a'", i) for i in range(1, n + 1)]
    ind_b = [("b'", i) for i in range(1, n + 1)]
    b.add(*clique_a, *ind_a, *clique_b, *ind_b)
    clique = clique_a + clique_b
    b.edges_from((p, q) for i, p in enumerate(clique) for q in clique[i + 1 :])
    for i in range(1, n + 1):
        b.edge(("a", 0), ("b'", i))
        b.edge(("b", 0), ("a'", i))
        others = [j for j in range(1, n + 1) if j != i]
        b.edges_from((("a", i), ("b'", j)) for j in others)
        b.edges_from((("b", i), ("a'", j)) for j in others)
        b.edge(("a", i) if x[i - 1] else ("a", 0), ("a'", i))
        b.edge(("b", i) if y[i - 1] else ("b", 0), ("b'", i))
    b.reveal(ALICE, clique_a + ind_a)
    b.reveal(BOB, clique_b + ind_b)
    return b, AL, _diam(("<=", 2), (">=", 3)), {
        "split_partition": {"clique": b.ids_of(clique), "independent": b.ids_of(ind_a + ind_b)}
    }


def _quadratic_core(n: int, x, y, bipartite: bool):
    b = Builder()
    rng = range(1, n + 1)
    b.add(*(("s", i) for i in rng), *(("a", i) for i in rng), *(("a'", i) for i in rng))
    b.add(*(("t", i) for i in rng), *(("t'", i) for i in rng))
    if bipartite:
        b.add(*(("q", i, h) for i in rng for h in (1, 2, 3)))
        b.add("uA", "uA'")
    else:
        b.add("uA")
    b.add(*(("b", i) for i in rng), *(("b'", i) for i in rng))
    b.add(*(["uB", "uB'"] if bipartite else ["uB"]))

    cells = [(i, j, (i - 1) * n + j - 1) for i in rng for j in rng]
    b.edges_from((("a", i), ("a'", j)) for i, j, k in cells if not x[k])
    b.edges_from((("b", i), ("b'", j)) for i, j, k in cells if not y[k])
    for side, hubs in (("a", ("uA", "uA'")), ("b", ("uB", "uB'"))):
        for i in rng:
            b.edge(hubs[0], (side, i))
            b.edge(hubs[1] if bipartite else hubs[0], (side + "'", i))
    for i in rng:
        b.edge(("s", i), ("a", i))
        b.edge(("s", i), ("b", i))
        b.edge(("t'", i), ("a'", i))
        b.edge(("t'", i), ("b'", i))
        if bipartite:
            chain = [("t'", i), ("q", i, 1), ("q", i, 2), ("q", i, 3), ("t", i)]
            for p, q in zip(chain, chain[1:]):
                b.edge(p, q)
        else:
            b.edge(("t'", i), ("t", i))
    bob = [("b", i) for i in rng] + [("b'", i) for i in rng] + (["uB", "uB'"] if bipartite else ["uB"])
    bob_set = set(bob)
    b.reveal(ALICE, [name for name in b.ids if name not in bob_set])
    b.reveal(BOB, bob)
    return b


def quadratic(n: int, x, y):
    b = _quadratic_core(n, x, y, bipartite=False)
    return b, AL, _diam(("<=", 4), (">=", 5)), {}


def quadratic_bipartite(n: int, x, y):
    b = _quadratic_core(n, x, y, bipartite=True)
    return b, AL, _diam(("<=", 7), (">=", 9)), {"bipartite": True}


def simple_al_conn(n: int, x, y):
    b = Builder()
    m = n + 1
    b.add("a", *(("l", i) for i in range(1, m + 1)), "b", *(("r", i) for i in range(1, m + 1)))
    for i in range(1, m + 1):
        b.edge(("l", i), ("r", i))
    b.edge("a", ("l", m))
    b.edge("b", ("r", m))
    for i in range(1, n + 1):
        if not x[i - 1]:
            b.edge("a", ("l", i))
        if not y[i - 1]:
            b.edge("b", ("r", i))
    b.reveal(ALICE, ["a"] + [("l", i) for i in range(1, m + 1)])
    b.reveal(BOB, ["b"] + [("r", i) for i in range(1, m + 1)])
    return b, AL, _CONN, {
        "forest_after_removal": b.ids_of(["a"]),
        "matching_after_removal": b.ids_of(["a", "b"]),
    }


def _cycles_builder(n: int, x, y) -> Builder:
    b = Builder()
    b.add("a0", "a_end")
    for i in range(1, n + 1):
        b.add(*(("a", i, t) for t in range(1, 5)))
    b.add("b0", "b_end")
    for i in range(1, n + 1):
        b.add(*(("b", i, t) for t in range(1, 5)))
    # owners matter for the subdivided variant: each edge goes with its author
    b.edge("a0", "b0")
    b.edge("a_end", "b_end")
    for side, owner, start, end in (("a", ALICE, "a0", "a_end"), ("b", BOB, "b0", "b_end")):
        prev = start
        for i in range(1, n + 1):
            b.edge(prev, (side, i, 1), owner)
            prev = (side, i, 4)
        b.edge(prev, end, owner)
    for i in range(1, n + 1):
        b.edge(("a", i, 2), ("b", i, 2))
        b.edge(("a", i, 3), ("b", i, 3))
        pairs = ((1, 2), (3, 4)) if x[i - 1] else ((1, 3), (2, 4))
        for s, t in pairs:
            b.edge(("a", i, s), ("a", i, t), ALICE)
        pairs = ((1, 2), (3, 4)) if y[i - 1] else ((1, 4), (2, 3))
        for s, t in pairs:
            b.edge(("b", i, s), ("b", i, t), BOB)
    alice = [name for name in b.ids if name in ("a0", "a_end") or name[0] == "a"]
    b.reveal(ALICE, alice)
    b.reveal(BOB, [name for name in b.ids if name[0] == "b"])
    return b


def cycles(n: int, x, y):
    return _cycles_builder(n, x, y), AL, _CONN, {"max_degree": 2}


def cycles_bipartite(n: int, x, y):
    b = _cycles_builder(n, x, y).subdivided()
    return b, AL, _CONN, {"max_degree": 2, "bipartite": True}


def interval(n: int, x, y):
    b = Builder()
    for i in range(1, n + 1):
        b.add(("u", i), ("a", i), ("v", i))
    b.add(*(("b", i) for i in range(1, n + 1)))
    for i in range(1, n + 1):
        b.edge(("u", i), ("a", i))
        b.edge(("v", i), ("b", i))
        if i > 1:
            b.edge(("v", i - 1), ("u", i))
        if not x[i - 1]:
            b.edge(("a", i), ("v", i))
        if not y[i - 1]:
            b.edge(("b", i), ("u", i))
            b.edge(("b", i), ("a", i))
    b.reveal(ALICE, [(s, i) for i in range(1, n + 1) for s in ("u", "a", "v")])
    b.reveal(BOB, [("b", i) for i in range(1, n + 1)])
    return b, VA, _CONN, {"interval": "asserted by construction"}


def split_conn(n: int, x, y):
    b = Builder()
    b.add(*(("v", i) for i in range(1, n + 1)), "a", "b")
    b.edge("a", "b")
    for i in range(1, n + 1):
        if not x[i - 1]:
            b.edge("a", ("v", i))
        if not y[i - 1]:
            b.edge("b", ("v", i))
    b.reveal(ALICE, [("v", i) for i in range(1, n + 1)] + ["a"])
    b.reveal(BOB, ["b"])
    return b, VA, _CONN, {
        "split_partition": {"clique": b.ids_of(["a", "b"]), "independent": b.ids_of(("v", i) for i in range(1, n + 1))}
    }


BUILDERS = {
    GadgetKind.SIMPLE_VA: simple_va,
    GadgetKind.CLIQUE_VA: clique_va,
    GadgetKind.SIMPLE_AL: simple_al,
    GadgetKind.WINDMILL: windmill,
    GadgetKind.DIAMOND: diamond,
    GadgetKind.SPLIT: split,
    GadgetKind.QUADRATIC: quadratic,
    GadgetKind.QUADRATIC_BIPARTITE: quadratic_bipartite,
    GadgetKind.SIMPLE_AL_CONN: simple_al_conn,
    GadgetKind.CYCLES: cycles,
    GadgetKind.CYCLES_BIPARTITE: cycles_bipartite,
    GadgetKind.INTERVAL: interval,
    GadgetKind.SPLIT_CONN: split_conn,
}

# the diameter bounds for these two rely on both strings having a 1 somewhere
NONZERO_REQUIRED = frozenset({GadgetKind.SIMPLE_VA, GadgetKind.SIMPLE_AL})

QUADRATIC_KINDS = frozenset({GadgetKind.QUADRATIC, GadgetKind.QUADRATIC_BIPARTITE})


def input_length(kind: GadgetKind, n: int) -> int:
    return n * n if kind in QUADRATIC_KINDS else n


def vertex_count(kind: GadgetKind, n: int) -> int:
    return {
        GadgetKind.SIMPLE_VA: n + 3,
        GadgetKind.CLIQUE_VA: n + 4,
        GadgetKind.SIMPLE_AL: 2 * n + 3,
        GadgetKind.WINDMILL: 5 * n + 6,
        GadgetKind.DIAMOND: 10 * n + 3,
        GadgetKind.SPLIT: 4 * n + 2,
        GadgetKind.QUADRATIC: 7 * n + 2,
        GadgetKind.QUADRATIC_BIPARTITE: 10 * n + 4,
        GadgetKind.SIMPLE_AL_CONN: 2 * n + 4,
        GadgetKind.CYCLES: 8 * n + 4,
        GadgetKind.CYCLES_BIPARTITE: 16 * n + 8,
        GadgetKind.INTERVAL: 4 * n,
        GadgetKind.SPLIT_CONN: n + 2,
    }[kind]


def build_disj_gadget(kind: "GadgetKind | str", x: "str | Sequence[int]", y: "str | Sequence[int]") -> GadgetInstance:
    """Build the Disjointness gadget ``kind`` for Alice's ``x`` and Bob's ``y``.

    ``n`` is the length of ``x``, or its square root for the quadratic kinds.
    """
    kind = GadgetKind.parse(kind)
    if kind.is_perm:
        raise GadgetInputError(f"{kind} is a Permutation gadget; use build_perm_gadget")
    xb, yb = parse_bits(x, "x"), parse_bits(y, "y")
    if len(xb) != len(yb):
        raise GadgetInputError(f"x and y differ in length ({len(xb)} vs {len(yb)})")
    if kind in QUADRATIC_KINDS:
        n = round(len(xb) ** 0.5)
        if n * n != len(xb):
            raise GadgetInputError(f"{kind} needs inputs of length n*n, got {len(xb)}")
    else:
        n = len(xb)
    if kind in NONZERO_REQUIRED and (not any(xb) or not any(yb)):
        raise GadgetInputError(f"{kind} needs both x and y to contain a 1")
    b, model, claim, witnesses = BUILDERS[kind](n, xb, yb)
    return b.finish(
        kind,
        n,
        {"x": bits_to_str(xb), "y": bits_to_str(yb)},
        disjoint(xb, yb),
        model,
        claim,
        witnesses,
    )
