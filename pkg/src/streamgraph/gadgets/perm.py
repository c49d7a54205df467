"""Reductions from two-party Permutation.

Alice holds a permutation pi of 1..n (n a power of two), Bob an index j.
The answer is YES when bit gamma of pi(psi) is 1, see ``PermInput``.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import GadgetInputError
from ..stream import StreamModel
from .core import ALICE, BOB, Builder, DichotomyClaim, GadgetInstance, GadgetKind, PermInput, parse_perm

AL = StreamModel.AL


def windmill_perm(p: PermInput):
    n = p.n
    b = Builder()
    tail = [("t", h) for h in range(1, 9)]
    b.add(*tail)
    for i in range(1, n + 1):
        b.add(("u", i, 2), ("u", i, 3), ("u", i, 4), ("v", i, 1), ("v", i, 2), ("v", i, 3), ("v", i, 4))
    for s, t in zip(tail, tail[1:]):
        b.edge(s, t)
    u1 = tail[0]
    for i in range(1, n + 1):
        u2, u3, u4 = ("u", i, 2), ("u", i, 3), ("u", i, 4)
        v1, v2, v3, v4 = ("v", i, 1), ("v", i, 2), ("v", i, 3), ("v", i, 4)
        b.edge(u1, u2)
        b.edge(u2 if i == p.psi else u1, u3)
        b.edge(v1, v2)
        b.edge(v2 if p.bit(i) else v1, v3)
        b.edge(u3, u4)
        b.edge(v4, v1)
        b.edge(u4, ("v", p.image(i), 4))
    alice = {(s, i, 4) for i in range(1, n + 1) for s in ("u", "v")}
    b.reveal(ALICE, [name for name in b.ids if name in alice])
    b.reveal(BOB, [name for name in b.ids if name not in alice])
    return b, DichotomyClaim("diameter", (">=", 14), ("<=", 13)), {"tree": True}


def diamond_perm(p: PermInput):
    n = p.n
    b = Builder()
    b.add("b", "b'", *(("c", i) for i in range(0, n + 1)))
    for i in range(1, n + 1):
        b.add(("a", i), *(("u", i, t) for t in range(1, 7)), *(("v", i, t) for t in range(1, 7)))
    b.edge("b", "b'")
    for i in range(0, n + 1):
        b.edge("b", ("c", i))
        b.edge("b'", ("c", i))
    for i in range(1, n + 1):
        for s in ("u", "v"):
            for t in (1, 2, 4, 5):
                b.edge((s, i, t), (s, i, t + 1))
        if i != p.psi:
            b.edge("b'", ("u", i, 2))
            b.edge("b'", ("u", i, 5))
        if not p.bit(i):
            b.edge("b", ("v", i, 2))
            b.edge("b", ("v", i, 5))
        pi = p.image(i)
        b.edge(("c", i - 1), ("u", i, 1))
        b.edge(("u", i, 3), ("v", pi, 1))
        b.edge(("v", pi, 3), ("a", i))
        b.edge(("a", i), ("u", i, 4))
        b.edge(("u", i, 6), ("v", pi, 4))
        b.edge(("v", pi, 6), ("c", i))
    bob = {"b", "b'"} | {(s, i, t) for i in range(1, n + 1) for s in ("u", "v") for t in (2, 5)}
    b.reveal(ALICE, [name for name in b.ids if name not in bob])
    b.reveal(BOB, [name for name in b.ids if name in bob])
    return b, DichotomyClaim("diameter", (">=", 10), ("<=", 9)), {"path_after_removal": b.ids_of(["b", "b'"])}


def cycles_perm(p: PermInput):
    n = p.n
    b = Builder()
    b.add("a0", "a'0", "a_end", "a'_end")
    for i in range(1, n + 1):
        b.add(*((s, i, t) for s in ("a", "a'", "b", "b'") for t in range(1, 5)))
    b.edge("a0", "a'0")
    b.edge("a_end", "a'_end")
    for i in range(1, n + 1):
        for t in range(1, 5):
            b.edge(("a", i, t), ("b", i, t))
            b.edge(("a'", i, t), ("b'", i, t))
        for s, t in ((1, 2), (3, 4)) if i == p.psi else ((1, 3), (2, 4)):
            b.edge(("b", i, s), ("b", i, t))
        for s, t in ((1, 2), (3, 4)) if p.bit(i) else ((1, 4), (2, 3)):
            b.edge(("b'", i, s), ("b'", i, t))
    # top chain in index order, bottom chain in the order pi(1), ..., pi(n)
    prev_top, prev_bottom = "a0", "a'0"
    for i in range(1, n + 1):
        pi = p.image(i)
        b.edge(prev_top, ("a", i, 1))
        b.edge(prev_bottom, ("a'", pi, 1))
        b.edge(("a", i, 2), ("a'", pi, 2))
        b.edge(("a", i, 3), ("a'", pi, 3))
        prev_top, prev_bottom = ("a", i, 4), ("a'", pi, 4)
    b.edge(prev_top, "a_end")
    b.edge(prev_bottom, "a'_end")
    alice = [name for name in b.ids if isinstance(name, str) or name[0] in ("a", "a'")]
    b.reveal(ALICE, alice)
    b.reveal(BOB, [name for name in b.ids if not isinstance(name, str) and name[0] in ("b", "b'")])
    return b, DichotomyClaim("connectivity", ("==", False), ("==", True)), {"max_degree": 2}


BUILDERS = {
    GadgetKind.WINDMILL_PERM: windmill_perm,
    GadgetKind.DIAMOND_PERM: diamond_perm,
    GadgetKind.CYCLES_PERM: cycles_perm,
}


def vertex_count(kind: GadgetKind, n: int) -> int:
    return {
        GadgetKind.WINDMILL_PERM: 7 * n + 8,
        GadgetKind.DIAMOND_PERM: 14 * n + 3,
        GadgetKind.CYCLES_PERM: 16 * n + 4,
    }[kind]


def build_perm_gadget(kind: "GadgetKind | str", pi: "str | Sequence[int] | PermInput", j: int | None = None) -> GadgetInstance:
    """Build the Permutation gadget ``kind`` for Alice's ``pi`` and Bob's ``j``."""
    kind = GadgetKind.parse(kind)
    if not kind.is_perm:
        raise GadgetInputError(f"{kind} is a Disjointness gadget; use build_disj_gadget")
    if isinstance(pi, PermInput):
        p = pi
    else:
        if j is None:
            raise GadgetInputError("Permutation gadgets need Bob's index j")
        p = parse_perm(pi, j)
    b, claim, witnesses = BUILDERS[kind](p)
    return b.finish(kind, p.n, p.to_json(), p.answer_yes, AL, claim, witnesses, {"psi": p.psi, "gamma": p.gamma})
