"""One-pass connectivity: vertex-cover and clique-modulator variants, the
union-find baseline, and the isolated-vertex test for split graphs."""

from __future__ import annotations

import math
from typing import Hashable, Iterable

from .accounting import MemoryLedger, PassMeter, budget_constant, counter_bits, log2n, meters
from .diameter_vc import as_modulator
from .errors import CoverViolationError, PartitionError
from .stream import EdgeItem, Stream, StreamModel, require_model


class DisjointSets:
    """Union by size with path halving over an explicitly grown universe."""

    def __init__(self, universe: Iterable[Hashable] = ()):
        self.parent: dict[Hashable, Hashable] = {}
        self.size: dict[Hashable, int] = {}
        self.sets = 0
        for x in universe:
            self.add(x)

    def add(self, x: Hashable) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1
            self.sets += 1

    def __contains__(self, x: Hashable) -> bool:
        return x in self.parent

    def __len__(self) -> int:
        return len(self.parent)

    def find(self, x: Hashable) -> Hashable:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: Hashable, b: Hashable) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.sets -= 1
        return True


def _dsu_bits(n: int, count: int) -> int:
    # element id, parent pointer and size per element
    return count * (2 * n.bit_length() + counter_bits(n))


def connectivity_vc(
    stream: Stream,
    X: Iterable[int] | None = None,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    k: int | None = None,
) -> bool:
    """Connectivity of an AL stream in one pass given a vertex cover ``X``.

    Without ``X`` pass ``k``: a greedy maximal matching is grown instead and
    its at most 2k matched vertices serve as the cover.  A vertex is always
    matched no later than its own item, so when an item arrives its
    currently matched neighbours are exactly its final cover neighbours.
    """
    require_model(stream, "connectivity_vc", StreamModel.AL)
    n = stream.n
    if X is None and k is None:
        raise ValueError("connectivity_vc needs a cover X or a bound k")
    meter, ledger = meters(meter, ledger)
    if X is not None:
        xs = as_modulator(X, n)
        k = len(xs)
    kk = max(k, 1)
    meter.arm("connectivity_vc", 1, "1")
    ledger.arm("connectivity_vc", budget_constant() * kk * log2n(n), "c*k*log2(n+1)")

    if X is not None:
        return _vc_given(stream, xs, meter, ledger)
    return _vc_greedy(stream, k, meter, ledger)


def _vc_given(stream: Stream, xs: tuple[int, ...], meter: PassMeter, ledger: MemoryLedger) -> bool:
    n = stream.n
    inside = set(xs)
    dsu = DisjointSets(xs)
    isolated = False
    with ledger.charge(_dsu_bits(n, len(xs)) + 1, "disjoint sets"):
        for item in stream.begin_pass(meter):
            w, nbrs = item
            if not nbrs:
                isolated = True
                continue
            if w in inside:
                for u in nbrs:
                    if u in inside:
                        dsu.union(w, u)
            else:
                anchor = nbrs[0]
                for u in nbrs:
                    if u not in inside:
                        raise CoverViolationError(f"edge ({w}, {u}) has no endpoint in the modulator")
                    dsu.union(anchor, u)
        if n <= 1:
            return True
        return not isolated and dsu.sets == 1


def _vc_greedy(stream: Stream, k: int, meter: PassMeter, ledger: MemoryLedger) -> bool:
    n = stream.n
    dsu = DisjointSets()
    isolated = False
    with ledger.charge(_dsu_bits(n, 2 * k) + 1, "matched vertices"):
        for item in stream.begin_pass(meter):
            w, nbrs = item
            if not nbrs:
                isolated = True
                continue
            if w not in dsu:
                mate = next((u for u in nbrs if u not in dsu), None)
                if mate is not None:
                    if len(dsu) + 2 > 2 * k:
                        raise CoverViolationError(f"greedy matching exceeds {k} edges; no vertex cover of size {k}")
                    dsu.add(w)
                    dsu.add(mate)
            if w in dsu:
                for u in nbrs:
                    if u in dsu:
                        dsu.union(w, u)
            else:
                # every neighbour is already matched
                for u in nbrs[1:]:
                    dsu.union(nbrs[0], u)
        if n <= 1:
            return True
        return not isolated and dsu.sets == 1


def connectivity_cliques(
    stream: Stream,
    X: Iterable[int],
    ell: int,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
) -> bool:
    """Connectivity in one pass when G - X is a disjoint union of at most ``ell`` cliques.

    The universe is X plus one element per clique, named by its lowest id.
    """
    require_model(stream, "connectivity_cliques", StreamModel.AL)
    n = stream.n
    xs = as_modulator(X, n)
    meter, ledger = meters(meter, ledger)
    kk = max(len(xs), 1)
    meter.arm("connectivity_cliques", 1, "1")
    ledger.arm("connectivity_cliques", budget_constant() * (kk + ell) * log2n(n), "c*(k+l)*log2(n+1)")

    inside = set(xs)
    dsu = DisjointSets(("x", x) for x in xs)
    # per clique: declared size, declared id sum, members seen, member id sum
    stats: dict[int, list[int]] = {}
    stat_bits = ell * (n.bit_length() + 2 * counter_bits(n) + 2 * counter_bits(n * n))
    with ledger.charge(_dsu_bits(n, len(xs) + ell) + stat_bits, "disjoint sets"):
        for item in stream.begin_pass(meter):
            w, nbrs = item
            if w in inside:
                for u in nbrs:
                    if u in inside:
                        dsu.union(("x", w), ("x", u))
                continue
            others = [u for u in nbrs if u not in inside]
            cid = min(others + [w])
            size, total = len(others) + 1, sum(others) + w
            entry = stats.get(cid)
            if entry is None:
                if len(stats) == ell:
                    raise PartitionError(f"more than {ell} cliques outside the modulator (at vertex {w})")
                entry = stats[cid] = [size, total, 0, 0]
                dsu.add(("c", cid))
            if entry[0] != size or entry[1] != total:
                raise PartitionError(f"vertex {w}: graph minus the modulator is not a disjoint union of cliques")
            entry[2] += 1
            entry[3] += w
            for u in nbrs:
                if u in inside:
                    dsu.union(("c", cid), ("x", u))
        for cid, (size, total, seen, idsum) in stats.items():
            if seen != size or idsum != total:
                raise PartitionError(f"clique {cid}: graph minus the modulator is not a disjoint union of cliques")
        return dsu.sets <= 1


def connectivity_unionfind(
    stream: Stream,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
) -> bool:
    """Baseline: one pass, a disjoint-set forest over all n vertices.

    EA streams never mention isolated vertices, so the declared n is
    compared with the number of distinct endpoints.
    """
    n = stream.n
    meter, ledger = meters(meter, ledger)
    meter.arm("connectivity_unionfind", 1, "1")
    ledger.arm("connectivity_unionfind", budget_constant() * max(n, 1) * log2n(n), "c*n*log2(n+1)")
    dsu = DisjointSets()
    with ledger.charge(_dsu_bits(n, n), "disjoint sets"):
        for item in stream.begin_pass(meter):
            if isinstance(item, EdgeItem):
                dsu.add(item.u)
                dsu.add(item.v)
                dsu.union(item.u, item.v)
            else:
                dsu.add(item.v)
                for u in item.neighbors:
                    dsu.add(u)
                    dsu.union(item.v, u)
        if n <= 1:
            return True
        return len(dsu) == n and dsu.sets == 1


def connectivity_split(
    stream: Stream,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    passes: int = 1,
) -> bool:
    """Connectivity of a promised split graph: connected iff no isolated vertex (n > 1).

    AL needs a single flag.  VA and EA need a presence bit per vertex; with
    ``passes=p`` the id range is split into p chunks, one per pass, using
    about n/p bits.
    """
    n = stream.n
    meter, ledger = meters(meter, ledger)
    if passes < 1:
        raise ValueError("passes must be at least 1")
    if n <= 1:
        meter.arm("connectivity_split", 1, "1")
        ledger.arm("connectivity_split", budget_constant() * log2n(n), "c*log2(n+1)")
        stream.begin_pass(meter)
        return True
    if stream.model is StreamModel.AL:
        meter.arm("connectivity_split", 1, "1")
        ledger.arm("connectivity_split", budget_constant() * log2n(n), "c*log2(n+1)")
        with ledger.flags(1, "isolated seen"):
            return all(item.neighbors for item in stream.begin_pass(meter))

    meter.arm("connectivity_split", passes, "p")
    ledger.arm(
        "connectivity_split", budget_constant() * (n / passes + log2n(n)), "c*(n/p+log2(n+1))"
    )
    chunk = math.ceil(n / passes)
    for lo in range(1, n + 1, chunk):
        hi = min(lo + chunk - 1, n)
        seen = bytearray(hi - lo + 1)
        with ledger.flags(len(seen), "presence"):
            for item in stream.begin_pass(meter):
                ends = (item.u, item.v) if isinstance(item, EdgeItem) else ((item.v,) + item.neighbors if item.neighbors else ())
                for u in ends:
                    if lo <= u <= hi:
                        seen[u - lo] = 1
            if not all(seen):
                return False
    return True
