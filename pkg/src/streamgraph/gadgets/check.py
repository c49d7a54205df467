"""Checks run against built gadgets: handoff discipline, dichotomy, witnesses."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from ..graph import Graph
from ..oracle import bfs_distances, exact_diameter, is_connected, is_cover, two_coloring
from . import disj, perm
from .core import ALICE, BOB, GadgetInstance, GadgetKind, PermInput, bits_to_str, parse_bits


def build_gadget(kind: "GadgetKind | str", **inputs) -> GadgetInstance:
    """Dispatch on the kind: ``x``/``y`` for Disjointness, ``pi``/``j`` for Permutation."""
    kind = GadgetKind.parse(kind)
    if kind.is_perm:
        return perm.build_perm_gadget(kind, inputs["pi"], inputs.get("j"))
    return disj.build_disj_gadget(kind, inputs["x"], inputs["y"])


def rebuild(inst: GadgetInstance, **changes) -> GadgetInstance:
    inputs = dict(inst.input)
    inputs.update(changes)
    return build_gadget(inst.kind, **inputs)


def expected_vertices(kind: GadgetKind, n: int) -> int:
    return perm.vertex_count(kind, n) if kind.is_perm else disj.vertex_count(kind, n)


# -- handoff ------------------------------------------------------------------


def _switches(owners) -> int:
    return sum(1 for a, b in zip(owners, owners[1:]) if a != b)


def _block(inst: GadgetInstance, who: str) -> list:
    return [item for item, o in zip(inst.items, inst.owners) if o == who]


def _variants(inst: GadgetInstance, who: str, rng: random.Random) -> list[dict]:
    """Two alternative inputs for party ``who`` that respect the builder's preconditions."""
    if inst.kind.is_perm:
        n = len(inst.input["pi"])
        if who == ALICE:
            shuffled = list(range(1, n + 1))
            rng.shuffle(shuffled)
            return [{"pi": list(reversed(inst.input["pi"]))}, {"pi": shuffled}]
        top = n * (n.bit_length() - 1)
        j = inst.input["j"]
        return [{"j": top + 1 - j if top + 1 - j != j else j % top + 1}, {"j": rng.randint(1, top)}]
    key = "x" if who == ALICE else "y"
    nonzero = inst.kind in disj.NONZERO_REQUIRED
    current = parse_bits(inst.input[key])
    flipped = tuple(1 - b for b in current)
    if nonzero and not any(flipped):
        flipped = (1,) * len(current)
    while True:
        rand = tuple(rng.randint(0, 1) for _ in current)
        if not nonzero or any(rand):
            break
    return [{key: bits_to_str(flipped)}, {key: bits_to_str(rand)}]


@dataclass
class HandoffReport:
    ok: bool
    switches: int
    problems: list[str] = field(default_factory=list)


def check_handoff(inst: GadgetInstance, seed: int = 0) -> HandoffReport:
    """Alice's block precedes Bob's and each block depends only on its owner's input."""
    problems = []
    switches = _switches(inst.owners)
    if inst.owners and inst.owners[0] != ALICE:
        problems.append("stream does not start with Alice")
    if switches > 1:
        problems.append(f"ownership switches {switches} times")
    rng = random.Random(seed)
    for who, other in ((ALICE, BOB), (BOB, ALICE)):
        for change in _variants(inst, other, rng):
            alt = rebuild(inst, **change)
            if _block(alt, who) != _block(inst, who):
                problems.append(f"{who}'s items change when the other input becomes {change}")
    return HandoffReport(not problems, switches, problems)


def validate_handoff(inst: GadgetInstance, seed: int = 0) -> bool:
    return check_handoff(inst, seed).ok


def interleave_mutant(inst: GadgetInstance) -> GadgetInstance:
    """Negative control: the same items with Alice's and Bob's blocks interleaved."""
    a = [(it, o) for it, o in zip(inst.items, inst.owners) if o == ALICE]
    b = [(it, o) for it, o in zip(inst.items, inst.owners) if o == BOB]
    mixed = []
    while a or b:
        if a:
            mixed.append(a.pop(0))
        if b:
            mixed.append(b.pop(0))
    return replace(inst, items=tuple(it for it, _ in mixed), owners=tuple(o for _, o in mixed))


# -- witnesses ----------------------------------------------------------------


def _max_degree(g: Graph) -> int:
    return max((g.degree(v) for v in g.vertices()), default=0)


def _is_forest(g: Graph) -> bool:
    comps = 0
    seen: set[int] = set()
    for v in g.vertices():
        if v in seen:
            continue
        comps += 1
        seen.update(w for w, d in bfs_distances(g, v).items() if d != float("inf"))
    return g.m == g.n - comps


def _is_path(g: Graph) -> bool:
    return g.n >= 1 and is_connected(g) and g.m == g.n - 1 and _max_degree(g) <= 2


def _removed(g: Graph, ids) -> Graph:
    gone = set(ids)
    keep = [v for v in g.vertices() if v not in gone]
    return g.induced(keep)[0]


def check_witness(g: Graph, name: str, value: Any) -> bool | None:
    """True/False for a checked witness, None for one that is only asserted."""
    if name == "vertex_cover":
        return is_cover(g, value)
    if name == "matching_after_removal":
        return _max_degree(_removed(g, value)) <= 1
    if name == "forest_after_removal":
        return _is_forest(_removed(g, value))
    if name == "path_after_removal":
        return _is_path(_removed(g, value))
    if name == "clique_after_removal":
        h = _removed(g, value)
        return h.m == h.n * (h.n - 1) // 2
    if name == "dominating_set":
        ds = set(value)
        return all(v in ds or g.neighbors(v) & ds for v in g.vertices())
    if name == "diameter_after_removal":
        return exact_diameter(_removed(g, value["removed"])) <= value["at_most"]
    if name == "tree":
        return is_connected(g) and g.m == g.n - 1
    if name == "max_degree":
        return _max_degree(g) <= value
    if name == "bipartite":
        return two_coloring(g) is not None
    if name == "split_partition":
        clique, ind = set(value["clique"]), set(value["independent"])
        if clique | ind != set(g.vertices()) or clique & ind:
            return False
        cl = sorted(clique)
        return all(g.has_edge(u, w) for i, u in enumerate(cl) for w in cl[i + 1 :]) and not any(
            g.neighbors(v) & ind for v in ind
        )
    if name == "interval":
        return None
    raise ValueError(f"unknown witness {name!r}")


# -- dichotomy ----------------------------------------------------------------


@dataclass
class DichotomyReport:
    kind: str
    problem: str
    input: dict
    answer: str
    value: Any
    expected: tuple
    claim_holds: bool
    vertices: int
    vertices_expected: int
    witnesses: dict[str, bool | None]
    connected: bool

    @property
    def ok(self) -> bool:
        structural = self.vertices == self.vertices_expected and all(w is not False for w in self.witnesses.values())
        # diameter gadgets must also be connected
        if self.problem == "diameter":
            structural = structural and self.connected
        return self.claim_holds and structural


def measure(inst: GadgetInstance) -> Any:
    if inst.claim.problem == "connectivity":
        return is_connected(inst.graph)
    return exact_diameter(inst.graph)


def verify_dichotomy(inst: GadgetInstance) -> DichotomyReport:
    value = measure(inst)
    return DichotomyReport(
        kind=inst.kind.value,
        problem=inst.claim.problem,
        input=inst.input,
        answer=inst.answer,
        value=value,
        expected=inst.claim.predicate(inst.answer_yes),
        claim_holds=inst.claim.holds(value, inst.answer_yes),
        vertices=inst.graph.n,
        vertices_expected=expected_vertices(inst.kind, inst.n),
        witnesses={name: check_witness(inst.graph, name, v) for name, v in inst.witnesses.items()},
        connected=is_connected(inst.graph),
    )


# -- sidecar ------------------------------------------------------------------


def write_sidecar(inst: GadgetInstance, path: "str | Path") -> None:
    Path(path).write_text(json.dumps(inst.sidecar(), indent=2, default=str) + "\n")


def read_sidecar(path: "str | Path") -> dict:
    data = json.loads(Path(path).read_text())
    missing = {"kind", "n", "input", "claim", "witnesses"} - data.keys()
    if missing:
        raise ValueError(f"sidecar {path} lacks {sorted(missing)}")
    return data


def all_inputs(kind: GadgetKind, n: int):
    """Every valid input pair (Disjointness) or (pi, j) pair (Permutation) of size n."""
    from itertools import permutations, product

    if kind.is_perm:
        log_n = n.bit_length() - 1
        for pi in permutations(range(1, n + 1)):
            for j in range(1, n * log_n + 1):
                yield {"pi": list(pi), "j": j}
        return
    length = disj.input_length(kind, n)
    nonzero = kind in disj.NONZERO_REQUIRED
    for x in product((0, 1), repeat=length):
        if nonzero and not any(x):
            continue
        for y in product((0, 1), repeat=length):
            if nonzero and not any(y):
                continue
            yield {"x": bits_to_str(x), "y": bits_to_str(y)}


__all__ = [
    "DichotomyReport",
    "HandoffReport",
    "PermInput",
    "all_inputs",
    "build_gadget",
    "check_handoff",
    "check_witness",
    "expected_vertices",
    "interleave_mutant",
    "measure",
    "read_sidecar",
    "rebuild",
    "validate_handoff",
    "verify_dichotomy",
    "write_sidecar",
]
