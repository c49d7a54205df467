"""Diameter of an AL stream given a vertex cover X of size k.

Any simple path in such a graph has length at most 2k, so a breadth-first
search restricted to X plus the source converges in 2k passes.  Vertices
outside X are only ever touched while their item streams past.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels as K
from .accounting import Charge, MemoryLedger, PassMeter, budget_constant, counter_bits, log2n, meters
from .errors import CoverViolationError, GraphFormatError
from .graph import Graph
from .stream import GraphStream, Stream, StreamModel, build_stream, pass_arrays, require_model

INF = math.inf


def as_modulator(X: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate an ordered modulator: distinct ids within 1..n."""
    members = tuple(int(x) for x in X)
    if len(set(members)) != len(members):
        raise GraphFormatError("modulator lists a vertex twice")
    for x in members:
        if not 1 <= x <= n:
            raise GraphFormatError(f"modulator vertex {x} outside 1..{n}")
    return members


def slot_array(n: int, ids: Sequence[int]) -> np.ndarray:
    slot = np.full(n + 1, -1, dtype=np.int64)
    for i, x in enumerate(ids):
        slot[x] = i
    return slot


def as_value(x: float) -> float:
    """Integral distances as ``int``; infinity stays ``math.inf``."""
    return INF if x == INF else int(x)


def _check_cover(verts, offsets, nbrs, xslot) -> None:
    w, u = K.cover_violation(verts, offsets, nbrs, xslot)
    if w:
        raise CoverViolationError(f"edge ({w}, {u}) has no endpoint in the modulator")


@dataclass
class BFSResult:
    source: int
    tracked: dict[int, float]
    eccentricity: float
    distances: dict[int, float] | None = None


def bounded_bfs(
    stream: Stream,
    X: Iterable[int],
    v: int,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    all_distances: bool = False,
    on_round: Callable[[int, dict[int, float]], None] | None = None,
    charge_modulator: bool = True,
) -> BFSResult:
    """Distances from ``v`` in 2k relaxation passes plus one extraction pass.

    Only ``X`` and ``v`` carry tentative distances.  ``all_distances``
    additionally returns every vertex's distance from the extraction pass
    (as output, not state).  ``on_round(i, d)`` sees the tracked distances
    after round ``i``.
    """
    require_model(stream, "bounded_bfs", StreamModel.AL)
    xs = as_modulator(X, stream.n)
    k = len(xs)
    meter, ledger = meters(meter, ledger)
    kk = max(k, 1)
    meter.arm("bounded_bfs", 2 * kk + 1, "2k+1")
    ledger.arm("bounded_bfs", budget_constant() * kk * log2n(stream.n), "c*k*log2(n+1)")

    tracked = xs if v in xs else xs + (v,)
    slot = slot_array(stream.n, tracked)
    d = np.full(len(tracked), INF)
    d[slot[v]] = 0
    rounds = 2 * k
    dist_bits = counter_bits(2 * k + 1)

    held = []
    if charge_modulator:
        held.append(ledger.vertex_ids(stream.n, k, "modulator"))
    held.append(ledger.vertex_ids(stream.n, 1, "source"))
    held.append(ledger.charge(len(tracked) * dist_bits, "tentative distances"))
    held.append(ledger.counters(rounds, 1, "round"))
    try:
        for r in range(1, rounds + 1):
            verts, offsets, nbrs = pass_arrays(stream, meter)
            with ledger.charge(dist_bits, "item minimum"):
                K.vc_round(verts, offsets, nbrs, slot, d)
            if on_round is not None:
                on_round(r, {x: as_value(d[i]) for i, x in enumerate(tracked)})
        verts, offsets, nbrs = pass_arrays(stream, meter)
        out = np.full(stream.n + 1, INF) if all_distances else K.empty_out()
        with ledger.charge(2 * dist_bits, "extraction"):
            ecc = K.vc_extract(verts, offsets, nbrs, slot, d, out)
    finally:
        for h in held:
            h.release()
    return BFSResult(
        source=v,
        tracked={x: as_value(d[i]) for i, x in enumerate(tracked)},
        eccentricity=as_value(ecc),
        distances={w: as_value(out[w]) for w in range(1, stream.n + 1)} if all_distances else None,
    )


def diameter_multipass(
    stream: Stream,
    X: Iterable[int],
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    fast: bool = False,
    validate: bool = False,
) -> float:
    """Exact diameter using one BFS per X member and per non-empty twin class.

    The default finds each class representative in its own pass to stay
    within O(k log n) bits.  ``fast=True`` records all 2^k representatives in
    a single pass instead (O(2^k log n) bits).
    """
    require_model(stream, "diameter_multipass", StreamModel.AL)
    xs = as_modulator(X, stream.n)
    k = len(xs)
    n = stream.n
    meter, ledger = meters(meter, ledger)
    kk = max(k, 1)
    meter.arm("diameter_multipass", (2**kk + kk) * (2 * kk + 2) + int(validate), "(2^k+k)(2k+2)")
    if fast:
        ledger.arm("diameter_multipass", budget_constant() * (2**kk + kk) * log2n(n), "c*(2^k+k)*log2(n+1)")
    else:
        ledger.arm("diameter_multipass", budget_constant() * kk * log2n(n), "c*k*log2(n+1)")

    xslot = slot_array(n, xs)
    held = [
        ledger.vertex_ids(n, k, "modulator"),
        ledger.counters(2 * k + 1, 1, "largest distance"),
        ledger.charge(k, "mask"),
    ]
    try:
        if validate:
            _check_cover(*pass_arrays(stream, meter), xslot)
        best = 0

        def run(source: int) -> bool:
            nonlocal best
            res = bounded_bfs(stream, xs, source, meter, ledger, charge_modulator=False)
            best = max(best, res.eccentricity)
            return best == INF

        for x in xs:
            if run(x):
                return INF
        if n > k:
            if fast:
                reps = np.zeros(2**k, dtype=np.int64)
                with ledger.vertex_ids(n, 2**k, "representatives"):
                    K.find_all_reps(*pass_arrays(stream, meter), xslot, reps)
                    for rep in reps:
                        if rep and run(int(rep)):
                            return INF
            else:
                for mask in range(2**k):
                    with ledger.vertex_ids(n, 1, "representative"):
                        rep = K.find_rep(*pass_arrays(stream, meter), xslot, mask)
                        if rep and run(int(rep)):
                            return INF
        return best
    finally:
        for h in held:
            h.release()


@dataclass
class TwinClassTable:
    """One-pass summary relative to an ordered modulator X.

    ``classes[mask]`` is 0, 1 or 2 (meaning two or more) vertices outside X
    whose neighbourhood in X is ``mask`` (bit i is ``X[i]``); ``xadj[i]`` is
    the neighbourhood mask of ``X[i]`` inside X.
    """

    X: tuple[int, ...]
    classes: np.ndarray
    xadj: np.ndarray
    n: int
    charge: Charge | None = None

    def release(self) -> None:
        if self.charge is not None:
            self.charge.release()

    def quotient(self) -> Graph:
        """X as 1..k followed by one or two stand-ins per non-empty class."""
        k = len(self.X)
        edges = []
        for i in range(k):
            for j in range(i + 1, k):
                if (int(self.xadj[i]) >> j) & 1:
                    edges.append((i + 1, j + 1))
        nxt = k
        for mask in range(len(self.classes)):
            for _ in range(int(self.classes[mask])):
                nxt += 1
                edges.extend((i + 1, nxt) for i in range(k) if (mask >> i) & 1)
        return Graph(nxt, edges)


def twin_class_table(
    stream: Stream,
    X: Iterable[int],
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    validate: bool = False,
) -> TwinClassTable:
    require_model(stream, "twin_class_table", StreamModel.AL)
    xs = as_modulator(X, stream.n)
    k = len(xs)
    meter, ledger = meters(meter, ledger)
    xslot = slot_array(stream.n, xs)
    classes = np.zeros(2**k, dtype=np.int8)
    xadj = np.zeros(k, dtype=np.int64)
    held = ledger.charge(2 * 2**k + k * k, "twin classes")
    arrays = pass_arrays(stream, meter)
    if validate:
        _check_cover(*arrays, xslot)
    K.twin_table(*arrays, xslot, classes, xadj)
    return TwinClassTable(xs, classes, xadj, stream.n, held)


def diameter_onepass(
    stream: Stream,
    X: Iterable[int],
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    validate: bool = False,
) -> float:
    """Exact diameter from a single pass via the twin-class table.

    The table determines the graph up to twins, so the multipass solver is
    replayed on the quotient (which keeps two stand-ins for classes of size
    two or more, preserving their mutual distance).
    """
    require_model(stream, "diameter_onepass", StreamModel.AL)
    xs = as_modulator(X, stream.n)
    k = len(xs)
    meter, ledger = meters(meter, ledger)
    kk = max(k, 1)
    meter.arm("diameter_onepass", 1, "1")
    ledger.arm(
        "diameter_onepass", budget_constant() * (2**kk + kk * log2n(stream.n)), "c*(2^k+k*log2(n+1))"
    )
    with ledger.vertex_ids(stream.n, k, "modulator"):
        table = twin_class_table(stream, xs, meter, ledger, validate=validate)
        try:
            qstream = build_stream(table.quotient(), StreamModel.AL)
            return diameter_multipass(qstream, range(1, k + 1), PassMeter(), ledger)
        finally:
            table.release()


def quotient_stream(stream: GraphStream, X: Sequence[int]) -> GraphStream:
    """AL stream of the twin quotient (for inspection and tests)."""
    return build_stream(twin_class_table(stream, X).quotient(), StreamModel.AL)
