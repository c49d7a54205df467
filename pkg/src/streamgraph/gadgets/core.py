"""Shared types for the two-party gadget constructions.

Every builder allocates vertex ids in a fixed slot order that does not depend
on either party's input, records who reveals each vertex, and turns that
reveal order into stream items.  The same routine therefore yields the plain
graph for the oracles and the ownership-labelled stream for handoff checks.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Hashable, Iterable, Sequence

from ..errors import GadgetInputError
from ..graph import Graph
from ..stream import GraphStream, Item, StreamModel, VertexItem

ALICE = "A"
BOB = "B"


class GadgetKind(str, Enum):
    SIMPLE_VA = "simple-va"
    CLIQUE_VA = "clique-va"
    SIMPLE_AL = "simple-al"
    WINDMILL = "windmill"
    DIAMOND = "diamond"
    SPLIT = "split"
    QUADRATIC = "quadratic"
    QUADRATIC_BIPARTITE = "quadratic-bipartite"
    SIMPLE_AL_CONN = "simple-al-conn"
    CYCLES = "cycles"
    CYCLES_BIPARTITE = "cycles-bipartite"
    INTERVAL = "interval"
    SPLIT_CONN = "split-conn"
    WINDMILL_PERM = "windmill-perm"
    DIAMOND_PERM = "diamond-perm"
    CYCLES_PERM = "cycles-perm"

    @classmethod
    def parse(cls, value: "str | GadgetKind") -> "GadgetKind":
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("_", "").replace("-", "")
        for kind in cls:
            if kind.value.replace("-", "") == key or kind.name.lower().replace("_", "") == key:
                return kind
        raise GadgetInputError(f"unknown gadget kind {value!r}")

    @property
    def is_perm(self) -> bool:
        return self in PERM_KINDS

    def __str__(self) -> str:
        return self.value


PERM_KINDS = frozenset({GadgetKind.WINDMILL_PERM, GadgetKind.DIAMOND_PERM, GadgetKind.CYCLES_PERM})
DISJ_KINDS = tuple(k for k in GadgetKind if k not in PERM_KINDS)


_OPS = {"<=": operator.le, ">=": operator.ge, "==": operator.eq}


@dataclass(frozen=True)
class DichotomyClaim:
    """What the construction guarantees for each answer of the source problem.

    ``yes``/``no`` are serialisable predicates ``(op, value)`` with op one of
    ``<=``, ``>=``, ``==``.  For Disjointness YES means the strings are
    disjoint; for Permutation YES means the requested bit is 1.
    """

    problem: str
    yes: tuple[str, Any]
    no: tuple[str, Any]

    def predicate(self, answer_yes: bool) -> tuple[str, Any]:
        return self.yes if answer_yes else self.no

    def holds(self, value: Any, answer_yes: bool) -> bool:
        op, bound = self.predicate(answer_yes)
        return bool(_OPS[op](value, bound))

    def exclusive(self) -> bool:
        """No answer value satisfies both sides."""
        domain: Iterable[Any] = (True, False) if self.problem == "connectivity" else [*range(0, 64), math.inf]
        return not any(self.holds(v, True) and self.holds(v, False) for v in domain)

    def to_json(self) -> dict:
        return {"problem": self.problem, "yes": list(self.yes), "no": list(self.no)}

    @classmethod
    def from_json(cls, data: dict) -> "DichotomyClaim":
        return cls(data["problem"], tuple(data["yes"]), tuple(data["no"]))


@dataclass
class GadgetInstance:
    kind: GadgetKind
    n: int
    input: dict
    answer_yes: bool
    graph: Graph
    model: StreamModel
    items: tuple[Item, ...]
    owners: tuple[str, ...]
    claim: DichotomyClaim
    witnesses: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)

    def stream(self) -> GraphStream:
        return GraphStream(self.model, self.graph.n, self.items)

    @property
    def answer(self) -> str:
        return "YES" if self.answer_yes else "NO"

    def sidecar(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "input": self.input,
            "answer": self.answer,
            "model": self.model.name,
            "vertices": self.graph.n,
            "claim": self.claim.to_json(),
            "witnesses": self.witnesses,
        }


# -- inputs -------------------------------------------------------------------


def parse_bits(value: "str | Sequence[int]", name: str = "input") -> tuple[int, ...]:
    if isinstance(value, str):
        if not value or not set(value) <= {"0", "1"}:
            raise GadgetInputError(f"{name} must be a non-empty 0/1 string, got {value!r}")
        return tuple(map(int, value))
    bits = tuple(int(b) for b in value)
    if not bits or any(b not in (0, 1) for b in bits):
        raise GadgetInputError(f"{name} must be a non-empty 0/1 sequence")
    return bits


def bits_to_str(bits: Sequence[int]) -> str:
    return "".join(map(str, bits))


def disjoint(x: Sequence[int], y: Sequence[int]) -> bool:
    return not any(a and b for a, b in zip(x, y))


@dataclass(frozen=True)
class PermInput:
    """Alice holds ``pi`` (1-based images of 1..n), Bob holds ``j`` in 1..n*log2(n).

    The question concerns bit ``gamma`` of ``pi(psi)``.  Bits of a value
    ``v`` in 1..n are those of ``v - 1`` written with log2(n) bits, bit 1
    being the most significant, so that the concatenation of all images is
    a string of exactly n*log2(n) bits.
    """

    pi: tuple[int, ...]
    j: int

    def __post_init__(self):
        n = len(self.pi)
        if n < 2 or n & (n - 1):
            raise GadgetInputError(f"permutation length must be a power of two >= 2, got {n}")
        if sorted(self.pi) != list(range(1, n + 1)):
            raise GadgetInputError(f"pi is not a permutation of 1..{n}: {list(self.pi)}")
        if not 1 <= self.j <= n * self.log_n:
            raise GadgetInputError(f"j must lie in 1..{n * self.log_n}, got {self.j}")

    @property
    def n(self) -> int:
        return len(self.pi)

    @property
    def log_n(self) -> int:
        return len(self.pi).bit_length() - 1

    @property
    def psi(self) -> int:
        return -(-self.j // self.log_n)

    @property
    def gamma(self) -> int:
        return self.j + self.log_n - self.psi * self.log_n

    def bit(self, value: int, gamma: int | None = None) -> int:
        """Bit ``gamma`` (1 = most significant) of ``value`` under the encoding above."""
        g = self.gamma if gamma is None else gamma
        return ((value - 1) >> (self.log_n - g)) & 1

    @property
    def answer_yes(self) -> bool:
        return self.bit(self.pi[self.psi - 1]) == 1

    def image(self, i: int) -> int:
        return self.pi[i - 1]

    def to_json(self) -> dict:
        return {"pi": list(self.pi), "j": self.j}


def parse_perm(pi: "str | Sequence[int]", j: int) -> PermInput:
    if isinstance(pi, str):
        try:
            pi = [int(t) for t in pi.replace(" ", "").split(",") if t]
        except ValueError:
            raise GadgetInputError(f"pi must be a comma-separated list of integers, got {pi!r}") from None
    return PermInput(tuple(int(p) for p in pi), int(j))


# -- construction helper ------------------------------------------------------


class Builder:
    """Allocates ids for named slots and records edges and the reveal order."""

    def __init__(self) -> None:
        self.ids: dict[Hashable, int] = {}
        self.edges: list[tuple[int, int, str]] = []
        self.order: list[tuple[str, int]] = []

    def add(self, *names: Hashable) -> None:
        for name in names:
            if name in self.ids:
                raise ValueError(f"slot {name!r} allocated twice")
            self.ids[name] = len(self.ids) + 1

    def __getitem__(self, name: Hashable) -> int:
        return self.ids[name]

    def edge(self, a: Hashable, b: Hashable, owner: str = ALICE) -> None:
        """Add an edge; ``owner`` only matters when edges are later subdivided."""
        self.edges.append((self.ids[a], self.ids[b], owner))

    def edges_from(self, pairs: Iterable[tuple[Hashable, Hashable]], owner: str = ALICE) -> None:
        ids = self.ids
        self.edges.extend((ids[a], ids[b], owner) for a, b in pairs)

    def reveal(self, owner: str, names: Iterable[Hashable]) -> None:
        self.order.extend((owner, self.ids[name]) for name in names)

    def subdivided(self) -> "Builder":
        """Every edge replaced by a path of length two; the new vertex belongs to the edge's owner.

        New ids follow the original ones in edge-insertion order, which
        builders keep independent of the inputs.
        """
        out = Builder()
        out.ids = dict(self.ids)
        mids: list[tuple[str, int]] = []
        for k, (u, v, owner) in enumerate(self.edges):
            name = ("subdivision", k)
            out.add(name)
            mid = out.ids[name]
            out.edges.append((u, mid, owner))
            out.edges.append((mid, v, owner))
            mids.append((owner, mid))
        alice = [(o, v) for o, v in self.order if o == ALICE] + [(o, m) for o, m in mids if o == ALICE]
        bob = [(o, v) for o, v in self.order if o == BOB] + [(o, m) for o, m in mids if o == BOB]
        out.order = alice + bob
        return out

    def graph(self) -> Graph:
        return Graph.from_pairs(len(self.ids), [e[:2] for e in self.edges])

    def finish(
        self,
        kind: GadgetKind,
        n: int,
        inp: dict,
        answer_yes: bool,
        model: StreamModel,
        claim: DichotomyClaim,
        witnesses: dict | None = None,
        labels: dict | None = None,
    ) -> GadgetInstance:
        g = self.graph()
        seen = [v for _, v in self.order]
        if sorted(seen) != list(range(1, g.n + 1)):
            raise AssertionError(f"{kind}: reveal order does not list every vertex exactly once")
        items: list[Item] = []
        revealed: set[int] = set()
        for _, v in self.order:
            nbrs = g.neighbors(v)
            if model is StreamModel.VA:
                nbrs = {u for u in nbrs if u in revealed}
            items.append(VertexItem(v, tuple(sorted(nbrs))))
            revealed.add(v)
        return GadgetInstance(
            kind=kind,
            n=n,
            input=inp,
            answer_yes=answer_yes,
            graph=g,
            model=model,
            items=tuple(items),
            owners=tuple(o for o, _ in self.order),
            claim=claim,
            witnesses=witnesses or {},
            labels=labels or {},
        )

    def ids_of(self, names: Iterable[Hashable]) -> list[int]:
        return sorted(self.ids[name] for name in names)
