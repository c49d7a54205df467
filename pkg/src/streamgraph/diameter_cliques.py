"""Diameter of an AL stream given X such that G - X is a disjoint union of at most ell cliques.

A clique is named by the smallest id in the closed neighbourhood (outside X)
of any of its members, which every member's own item reveals.  Besides the
k distances on X we keep one distance per clique: the smallest distance of
any member.  Shortest paths have length at most 3k+1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels as K
from .accounting import Charge, MemoryLedger, PassMeter, budget_constant, counter_bits, log2n, meters
from .diameter_vc import as_modulator, as_value, slot_array
from .errors import PartitionError
from .graph import Graph
from .stream import EdgeItem, Item, Stream, StreamModel, build_stream, pass_arrays, require_model

INF = math.inf


def clique_id_of(item: Item, X: Iterable[int]) -> int:
    """Canonical clique id of a non-X vertex item: min id of its closed neighbourhood minus X."""
    if isinstance(item, EdgeItem):
        raise TypeError("clique ids are read from vertex items")
    xs = set(X)
    if item.v in xs:
        raise ValueError(f"vertex {item.v} belongs to the modulator")
    return min([item.v] + [u for u in item.neighbors if u not in xs])


def _raise_partition(status: int, vertex: int, ell: int) -> None:
    if status == K.TOO_MANY_CLIQUES:
        raise PartitionError(f"more than {ell} cliques outside the modulator (at vertex {vertex})")
    if status == K.INCONSISTENT:
        raise PartitionError(f"vertex {vertex}: graph minus the modulator is not a disjoint union of cliques")


class _CliqueSlots:
    """Clique ids seen so far plus the per-clique consistency counters."""

    def __init__(self, n: int, ell: int):
        self.cslot = np.full(n + 1, -1, dtype=np.int64)
        self.cids = np.zeros(ell, dtype=np.int64)
        self.stats = np.zeros((ell, 4), dtype=np.int64)

    def check(self, ell: int) -> None:
        bad = K.clique_stats_ok(self.cids, self.stats)
        if bad:
            _raise_partition(K.INCONSISTENT, int(bad), ell)

    def count(self) -> int:
        return int(np.count_nonzero(self.cids))


def _slot_bits(n: int, ell: int) -> int:
    # id, declared size, member count, and two id sums per clique
    return ell * (2 * n.bit_length() + 2 * counter_bits(n) + 2 * counter_bits(n * n))


@dataclass
class CliqueSummary:
    source: int
    ell: int
    representative: dict[int, int]
    d: dict[str, float]
    eccentricity: float
    distances: dict[int, float] | None = None


def bounded_bfs_cliques(
    stream: Stream,
    X: Iterable[int],
    v: int,
    ell: int,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    all_distances: bool = False,
    charge_modulator: bool = True,
) -> CliqueSummary:
    """Distances from ``v`` in 3k+1 relaxation passes plus one extraction pass.

    The first round also registers the cliques and checks that the non-X
    part really is a disjoint union of at most ``ell`` cliques.
    """
    require_model(stream, "bounded_bfs_cliques", StreamModel.AL)
    xs = as_modulator(X, stream.n)
    k = len(xs)
    n = stream.n
    meter, ledger = meters(meter, ledger)
    kk = max(k, 1)
    meter.arm("bounded_bfs_cliques", 3 * kk + 2, "3k+2")
    ledger.arm("bounded_bfs_cliques", budget_constant() * (kk + ell) * log2n(n), "c*(k+l)*log2(n+1)")

    xslot = slot_array(n, xs)
    slots = _CliqueSlots(n, ell)
    d = np.full(k + ell, INF)
    if v in xs:
        d[xslot[v]] = 0
    rounds = 3 * k + 1
    dist_bits = counter_bits(3 * k + 2)

    held: list[Charge] = []
    if charge_modulator:
        held.append(ledger.vertex_ids(n, k, "modulator"))
    held.append(ledger.vertex_ids(n, 1, "source"))
    held.append(ledger.charge(_slot_bits(n, ell), "clique slots"))
    held.append(ledger.charge(2 * (k + ell) * dist_bits, "tentative distances and snapshot"))
    held.append(ledger.counters(rounds, 1, "round"))
    try:
        for r in range(1, rounds + 1):
            verts, offsets, nbrs = pass_arrays(stream, meter)
            with ledger.charge(2 * dist_bits + n.bit_length(), "item scratch"):
                status, bad = K.clique_round(
                    verts, offsets, nbrs, xslot, k, v, slots.cslot, slots.cids, slots.stats, d, d.copy(), r == 1
                )
            _raise_partition(status, int(bad), ell)
            if r == 1:
                slots.check(ell)
        verts, offsets, nbrs = pass_arrays(stream, meter)
        out = np.full(n + 1, INF) if all_distances else K.empty_out()
        with ledger.charge(2 * dist_bits + n.bit_length(), "extraction"):
            ecc = K.clique_extract(verts, offsets, nbrs, xslot, k, v, slots.cslot, d, out)
    finally:
        for h in held:
            h.release()

    cids = [int(c) for c in slots.cids if c]
    dd: dict[str, float] = {f"x{x}": as_value(d[i]) for i, x in enumerate(xs)}
    dd.update({f"clique{c}": as_value(d[k + i]) for i, c in enumerate(cids)})
    return CliqueSummary(
        source=v,
        ell=len(cids),
        representative={i: c for i, c in enumerate(cids)},
        d=dd,
        eccentricity=as_value(ecc),
        distances={w: as_value(out[w]) for w in range(1, n + 1)} if all_distances else None,
    )


def diameter_multipass_cliques(
    stream: Stream,
    X: Iterable[int],
    ell: int,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
) -> float:
    """Exact diameter: BFS from each X member and from one vertex per (mask, clique) class."""
    require_model(stream, "diameter_multipass_cliques", StreamModel.AL)
    xs = as_modulator(X, stream.n)
    k = len(xs)
    n = stream.n
    meter, ledger = meters(meter, ledger)
    kk = max(k, 1)
    meter.arm(
        "diameter_multipass_cliques", (2**kk * ell + 2**kk + kk) * (3 * kk + 3), "(2^k*l+2^k+k)(3k+3)"
    )
    ledger.arm("diameter_multipass_cliques", budget_constant() * (kk + ell) * log2n(n), "c*(k+l)*log2(n+1)")

    xslot = slot_array(n, xs)
    held = [
        ledger.vertex_ids(n, k, "modulator"),
        ledger.counters(3 * k + 2, 1, "largest distance"),
        ledger.charge(k, "mask"),
    ]
    try:
        best = 0

        def run(source: int) -> bool:
            nonlocal best
            res = bounded_bfs_cliques(stream, xs, source, ell, meter, ledger, charge_modulator=False)
            best = max(best, res.eccentricity)
            return best == INF

        for x in xs:
            if run(x):
                return INF
        if n > k:
            rep_ids = np.zeros(ell, dtype=np.int64)
            rep_cids = np.zeros(ell, dtype=np.int64)
            for mask in range(2**k):
                with ledger.vertex_ids(n, 2 * ell, "representatives"):
                    count = K.clique_reps(*pass_arrays(stream, meter), xslot, mask, rep_ids, rep_cids)
                    if count < 0:
                        raise PartitionError(f"more than {ell} cliques outside the modulator")
                    for rep in rep_ids[:count]:
                        if run(int(rep)):
                            return INF
        return best
    finally:
        for h in held:
            h.release()


@dataclass
class CliqueClassTable:
    """Capped class sizes per (mask over X, clique slot) plus the edges inside X."""

    X: tuple[int, ...]
    classes: np.ndarray
    xadj: np.ndarray
    clique_ids: list[int]
    charge: Charge | None = None

    def release(self) -> None:
        if self.charge is not None:
            self.charge.release()

    def quotient(self) -> Graph:
        k = len(self.X)
        edges = []
        for i in range(k):
            for j in range(i + 1, k):
                if (int(self.xadj[i]) >> j) & 1:
                    edges.append((i + 1, j + 1))
        nxt = k
        for s in range(len(self.clique_ids)):
            members = []
            for mask in range(self.classes.shape[0]):
                for _ in range(int(self.classes[mask, s])):
                    nxt += 1
                    members.append(nxt)
                    edges.extend((i + 1, nxt) for i in range(k) if (mask >> i) & 1)
            edges.extend((a, b) for i, a in enumerate(members) for b in members[i + 1 :])
        return Graph(nxt, edges)


def clique_class_table(
    stream: Stream,
    X: Iterable[int],
    ell: int,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
) -> CliqueClassTable:
    require_model(stream, "clique_class_table", StreamModel.AL)
    xs = as_modulator(X, stream.n)
    k = len(xs)
    meter, ledger = meters(meter, ledger)
    xslot = slot_array(stream.n, xs)
    slots = _CliqueSlots(stream.n, ell)
    classes = np.zeros((2**k, ell), dtype=np.int8)
    xadj = np.zeros(k, dtype=np.int64)
    held = ledger.charge(2 * 2**k * ell + k * k, "clique classes")
    try:
        with ledger.charge(_slot_bits(stream.n, ell), "clique slots"):
            status, bad = K.clique_table(*pass_arrays(stream, meter), xslot, slots.cslot, slots.cids, slots.stats, classes, xadj)
            _raise_partition(status, int(bad), ell)
            slots.check(ell)
    except Exception:
        held.release()
        raise
    cids = [int(c) for c in slots.cids if c]
    return CliqueClassTable(xs, classes[:, : len(cids)].copy(), xadj, cids, held)


def diameter_onepass_cliques(
    stream: Stream,
    X: Iterable[int],
    ell: int,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
) -> float:
    """Exact diameter from one pass over the (mask, clique) class table.

    Members of one class are adjacent twins, so two stand-ins per class give
    a quotient with the same diameter, solved here with the multipass rule.
    """
    require_model(stream, "diameter_onepass_cliques", StreamModel.AL)
    xs = as_modulator(X, stream.n)
    k = len(xs)
    meter, ledger = meters(meter, ledger)
    kk = max(k, 1)
    meter.arm("diameter_onepass_cliques", 1, "1")
    ledger.arm(
        "diameter_onepass_cliques",
        budget_constant() * (2**kk * ell + (kk + ell) * log2n(stream.n)),
        "c*(2^k*l+(k+l)*log2(n+1))",
    )
    with ledger.vertex_ids(stream.n, k, "modulator"):
        table = clique_class_table(stream, xs, ell, meter, ledger)
        try:
            q = table.quotient()
            qstream = build_stream(q, StreamModel.AL)
            return diameter_multipass_cliques(qstream, range(1, k + 1), max(ell, 1), PassMeter(), ledger)
        finally:
            table.release()
