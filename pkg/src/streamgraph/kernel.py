"""Streaming Vertex Cover kernelization down to at most 2k vertices.

Pipeline: Buss-Goldsmith high-degree removal (as a re-emitted stream), the
doubled bipartite graph B, a maximum matching of B grown by streamed
alternating DFS, a Koenig cover of B, the Nemhauser-Trotter sets derived
from it, and finally the kernel G[V0].

Every stage reads its input through ``begin_pass``, so a pass over a
downstream stream re-runs the upstream transformations and is charged in
passes over the original input.  ``cached=True`` keeps the same charges but
materialises intermediate streams once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .accounting import MemoryLedger, PassMeter, budget_constant, counter_bits, log2n, meters, vertex_id_bits
from .errors import MatchingOverflowError, ModelMismatchError
from .graph import Graph
from .stream import (
    DerivedStream,
    EdgeItem,
    GraphStream,
    Stream,
    StreamModel,
    VertexItem,
    build_stream,
    upstream_cost,
)

# Pass budgets for the matching stages are KERNEL_PASS_C * (k+1)^2 (AL) and
# KERNEL_PASS_C * (k+1)^3 (EA), counted in passes over the original input.
KERNEL_PASS_C = 256

NO = "NO"
KERNEL = "KERNEL"


def edge_view(stream: Stream) -> Stream:
    """A VA stream read as EA: each vertex item yields its (earlier-neighbour) edges."""
    if stream.model is StreamModel.EA:
        return stream
    if stream.model is not StreamModel.VA:
        raise ModelMismatchError("edge_view", "VA/EA", stream.model)

    def produce() -> Iterator[EdgeItem]:
        for it in stream.begin_pass(None):
            for u in it.neighbors:
                yield EdgeItem(u, it.v)

    return DerivedStream(StreamModel.EA, stream.n, produce, upstream_cost(stream), name="edge view")


def _item_edges(item) -> Iterator[tuple[int, int]]:
    if isinstance(item, EdgeItem):
        yield item.u, item.v
    else:
        for u in item.neighbors:
            yield item.v, u


# -- Buss-Goldsmith -------------------------------------------------------------


@dataclass
class BussResult:
    S: tuple[int, ...]
    k: int
    k1: int
    verdict: str
    threshold: int
    m_total: int
    m_removed: int
    reason: str = ""
    kernel: Stream | None = None

    @property
    def is_no(self) -> bool:
        return self.verdict == NO


def buss_goldsmith(
    stream: Stream,
    k: int,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    cached: bool = False,
) -> BussResult:
    """High-degree removal with an O(k^2)-edge check; the kernel comes back as a stream.

    AL: one census pass (degree > k joins S; ``r`` counts removed edges
    once each via a per-item counter) and the kernel stream filters S out.
    EA (and VA, read as EA): a greedy matching gives a cover X of size at
    most 2k, a second pass counts degrees inside X with threshold 2k, a
    third counts m and r.  Kernel streams list only vertices that keep an
    edge.  NO verdicts are returned, not raised.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    meter, ledger = meters(meter, ledger)
    n = stream.n
    kk = max(k, 1)
    ledger.arm("buss_goldsmith", budget_constant() * kk * log2n(n), "c*k*log2(n+1)")
    if stream.model is StreamModel.AL:
        meter.arm("buss_goldsmith", 2 * upstream_cost(stream), "2")
        return _buss_al(stream, k, meter, ledger, cached)
    source = edge_view(stream)
    meter.arm("buss_goldsmith", 4 * upstream_cost(source), "4")
    return _buss_ea(source, k, meter, ledger, cached)


def _buss_al(stream: Stream, k: int, meter: PassMeter, ledger: MemoryLedger, cached: bool) -> BussResult:
    n = stream.n
    S: set[int] = set()
    m2 = r = 0
    with ledger.vertex_ids(n, k, "S"), ledger.counters(n * n, 4, "m', r, degree, local"):
        for it in stream.begin_pass(meter):
            degree = len(it.neighbors)
            m2 += degree
            if degree > k:
                if len(S) == k:
                    return BussResult(tuple(sorted(S | {it.v})), k, k - len(S) - 1, NO, k, m2 // 2, r,
                                      f"more than {k} vertices of degree > {k}")
                # local counter: edges towards vertices not yet in S
                r += sum(1 for u in it.neighbors if u not in S)
                S.add(it.v)
    k1 = k - len(S)
    m = m2 // 2
    result = BussResult(tuple(sorted(S)), k, k1, KERNEL, k, m, r)
    if m - r > k * k1:
        result.verdict = NO
        result.reason = f"{m - r} edges remain, more than k*k1 = {k * k1}"
        return result
    result.kernel = _filtered(stream, frozenset(S), cached)
    return result


def _buss_ea(stream: Stream, k: int, meter: PassMeter, ledger: MemoryLedger, cached: bool) -> BussResult:
    n = stream.n
    threshold = 2 * k
    mate: set[int] = set()
    with ledger.vertex_ids(n, 2 * k, "greedy cover X"):
        for u, v in (e for it in stream.begin_pass(meter) for e in _item_edges(it)):
            if u not in mate and v not in mate:
                if len(mate) == 2 * k:
                    return BussResult((), k, k, NO, threshold, 0, 0, f"greedy matching exceeds {k} edges")
                mate.update((u, v))
        degree = dict.fromkeys(mate, 0)
        with ledger.counters(n, len(mate), "degrees in X"):
            for u, v in (e for it in stream.begin_pass(meter) for e in _item_edges(it)):
                if u in degree:
                    degree[u] += 1
                if v in degree:
                    degree[v] += 1
        S = {x for x, d in degree.items() if d > threshold}
    with ledger.vertex_ids(n, max(len(S), 0), "S"), ledger.counters(n * n, 2, "m, r"):
        if len(S) > k:
            return BussResult(tuple(sorted(S)), k, k - len(S), NO, threshold, 0, 0,
                              f"more than {k} vertices of degree > {threshold}")
        m = r = 0
        for u, v in (e for it in stream.begin_pass(meter) for e in _item_edges(it)):
            m += 1
            if u in S or v in S:
                r += 1
    k1 = k - len(S)
    result = BussResult(tuple(sorted(S)), k, k1, KERNEL, threshold, m, r)
    if m - r > threshold * k1:
        result.verdict = NO
        result.reason = f"{m - r} edges remain, more than 2k*k1 = {threshold * k1}"
        return result
    result.kernel = _filtered(stream, frozenset(S), cached)
    return result


def _filtered(stream: Stream, gone: frozenset[int], cached: bool) -> DerivedStream:
    """``stream`` minus the vertices in ``gone``; vertices left without edges are dropped."""
    model = stream.model

    def produce() -> Iterator:
        for it in stream.begin_pass(None):
            if isinstance(it, EdgeItem):
                if it.u not in gone and it.v not in gone:
                    yield it
            elif it.v not in gone:
                kept = tuple(u for u in it.neighbors if u not in gone)
                if kept:
                    yield VertexItem(it.v, kept)

    return DerivedStream(model, stream.n, produce, upstream_cost(stream), cached, name="buss kernel")


# -- bipartite doubling ---------------------------------------------------------


def bipartite_double(stream: Stream, *, cached: bool = False) -> DerivedStream:
    """Stream of B: vertices v and v' = v + n, an edge (x, y) becoming (x, y') and (x', y).

    Two upstream passes per pass: AL emits all V items then all V' items,
    EA emits the (x, y') edges then the (x', y) edges.
    """
    model = stream.model
    if model not in (StreamModel.AL, StreamModel.EA):
        raise ModelMismatchError("bipartite_double", "AL/EA", model)
    n = stream.n

    def produce() -> Iterator:
        if model is StreamModel.AL:
            for it in stream.begin_pass(None):
                yield VertexItem(it.v, tuple(u + n for u in it.neighbors))
            for it in stream.begin_pass(None):
                yield VertexItem(it.v + n, it.neighbors)
        else:
            for it in stream.begin_pass(None):
                yield EdgeItem(it.u, it.v + n)
            for it in stream.begin_pass(None):
                yield EdgeItem(it.u + n, it.v)

    return DerivedStream(model, 2 * n, produce, 2 * upstream_cost(stream), cached, name="doubled")


def double_graph(graph: Graph) -> Graph:
    """Offline version of :func:`bipartite_double`, for oracles."""
    n = graph.n
    return Graph(2 * n, [p for u, v in graph.edges() for p in ((u, v + n), (u + n, v))])


# -- matchings ------------------------------------------------------------------


@dataclass
class Matching:
    """Matching of a bipartite graph with left side 1..half and right side half+1..2*half."""

    half: int
    mate: dict[int, int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.mate) // 2

    def __len__(self) -> int:
        return self.size

    def add(self, x: int, y: int) -> None:
        self.mate[x] = y
        self.mate[y] = x

    def edges(self) -> list[tuple[int, int]]:
        return sorted((x, y) for x, y in self.mate.items() if x <= self.half)

    def copy(self) -> "Matching":
        return Matching(self.half, dict(self.mate))

    def is_valid_in(self, graph: Graph) -> bool:
        return all(graph.has_edge(x, y) and self.mate.get(y) == x for x, y in self.mate.items())


def _half(stream: Stream) -> int:
    if stream.n % 2:
        raise ValueError("a doubled graph has an even number of vertex ids")
    return stream.n // 2


def _matching_bits(n: int, size: int) -> int:
    return 2 * size * vertex_id_bits(n)


def greedy_maximal_matching(
    stream: Stream,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    bound: int | None = None,
) -> Matching:
    """One pass: take every edge whose endpoints are both still free.

    With ``bound`` set, growing past it raises :class:`MatchingOverflowError`.
    """
    meter, ledger = meters(meter, ledger)
    meter.arm("greedy_maximal_matching", upstream_cost(stream), "1")
    M = Matching(_half(stream))
    held = ledger.charge(0, "matching")
    try:
        for it in stream.begin_pass(meter):
            for x, y in _item_edges(it):
                if x not in M.mate and y not in M.mate:
                    if bound is not None and M.size == bound:
                        raise MatchingOverflowError(bound)
                    held.resize(_matching_bits(stream.n, M.size + 1))
                    M.add(x, y)
                    if isinstance(it, VertexItem):
                        break
    finally:
        held.release()
    return M


class _AlternatingSearch:
    """Streamed DFS over M-alternating paths from free left vertices.

    Each stack entry is a left vertex with a counter: how many of its
    incident edges (in stream order) were already considered.  One pass
    advances the top entry to its next usable edge.  Matched edges are
    marked visited once and stay marked for the whole phase, so every
    matched vertex enters the stack at most once.  In AL, a start vertex
    whose neighbours are all used up costs nothing extra: the same pass moves
    on to the next start.  In EA each start costs its own pass.
    """

    def __init__(self, stream: Stream, M: Matching, meter: PassMeter, ledger: MemoryLedger, visited: dict | None):
        self.stream = stream
        self.M = M
        self.half = M.half
        self.meter = meter
        self.ledger = ledger
        self.visited: dict[int, int] = {} if visited is None else visited
        self.stack: list[list[int]] = []
        self.start = 0
        self.next_pos = 0
        self.last_start = 0
        self.al = stream.model is StreamModel.AL

    def _charges(self):
        n = self.stream.n
        size = max(self.M.size, 1)
        return [
            self.ledger.charge(size * (1 + vertex_id_bits(n)), "visited marks"),
            self.ledger.charge((size + 1) * (vertex_id_bits(n) + counter_bits(n)), "search stack"),
            self.ledger.charge(vertex_id_bits(n) + counter_bits(n), "start pointer"),
        ]

    def _orient(self, a: int, b: int) -> tuple[int, int]:
        return (a, b) if a <= self.half else (b, a)

    def _consider(self, y: int) -> str | None:
        if y not in self.M.mate:
            return "free"
        if y not in self.visited:
            return "visit"
        return None

    def _start_pass(self) -> list[int] | None | bool:
        """Find the next start with a usable edge. Returns a path, True (search started) or None (none left)."""
        mate = self.M.mate
        if self.al:
            for idx, it in enumerate(self.stream.begin_pass(self.meter)):
                if idx < self.next_pos:
                    continue
                v = it.v
                if v > self.half or v in mate or not it.neighbors:
                    continue
                self.next_pos = idx + 1
                for pos, y in enumerate(it.neighbors):
                    kind = self._consider(y)
                    if kind == "free":
                        return [v, y]
                    if kind == "visit":
                        self.visited[y] = v
                        self.start = v
                        self.stack = [[v, pos + 1], [mate[y], 0]]
                        return True
            return None
        cand = found = None
        occ = 0
        for it in self.stream.begin_pass(self.meter):
            x, y = self._orient(it.u, it.v)
            if x in mate or x <= self.last_start:
                continue
            if cand is None or x < cand:
                cand, occ, found = x, 0, None
            if x == cand:
                if found is None:
                    kind = self._consider(y)
                    if kind is not None:
                        found = (kind, occ, y)
                occ += 1
        if cand is None:
            return None
        self.last_start = cand
        if found is None:
            return False
        kind, pos, y = found
        if kind == "free":
            return [cand, y]
        self.visited[y] = cand
        self.start = cand
        self.stack = [[cand, pos + 1], [mate[y], 0]]
        return True

    def _neighbors(self, items, x: int) -> Iterator[int]:
        if self.al:
            for it in items:
                if it.v == x:
                    yield from it.neighbors
                    return
        else:
            for it in items:
                a, b = self._orient(it.u, it.v)
                if a == x:
                    yield b

    def _step(self) -> list[int] | None:
        """One pass advancing the top of the stack; returns a path when one is completed."""
        top = self.stack[-1]
        x, counter = top
        for pos, y in enumerate(self._neighbors(self.stream.begin_pass(self.meter), x)):
            if pos < counter:
                continue
            kind = self._consider(y)
            if kind == "free":
                return [entry[0] for entry in self.stack] + [y]
            if kind == "visit":
                self.visited[y] = self.start
                top[1] = pos + 1
                self.stack.append([self.M.mate[y], 0])
                return None
        self.stack.pop()
        return None

    def run(self, stop_at_path: bool) -> list[int] | None:
        held = self._charges()
        try:
            while True:
                if not self.stack:
                    got = self._start_pass()
                    if got is None:
                        return None
                    if isinstance(got, list):
                        if stop_at_path:
                            return self._expand(got)
                        raise ValueError("matching is not maximum: an augmenting path exists")
                    continue
                path = self._step()
                if path is not None:
                    if stop_at_path:
                        return self._expand(path)
                    raise ValueError("matching is not maximum: an augmenting path exists")
        finally:
            for h in held:
                h.release()

    def _expand(self, lefts_and_end: list[int]) -> list[int]:
        """Left vertices x0..xt plus the free right end, as the full alternating path."""
        *xs, end = lefts_and_end
        path = [xs[0]]
        for x in xs[1:]:
            path.extend((self.M.mate[x], x))
        path.append(end)
        return path


def find_augmenting_path(
    stream: Stream,
    M: Matching,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    visited: dict | None = None,
) -> list[int] | None:
    """An M-augmenting path ``[x0, y1, x1, ..., yt]`` of the bipartite stream, or ``None``.

    ``visited`` maps right vertices whose matched edge was explored to the
    start vertex of that search; pass the same dict across calls on an
    unchanged matching to keep the marks.
    """
    meter, ledger = meters(meter, ledger)
    kk = max(M.size, 1)
    cost = upstream_cost(stream)
    if stream.model is StreamModel.AL:
        meter.arm("find_augmenting_path", KERNEL_PASS_C * (kk + 1) * cost, "C*(k+1)")
    else:
        meter.arm("find_augmenting_path", KERNEL_PASS_C * (kk + 1) ** 2 * cost, "C*(k+1)^2")
    ledger.arm("find_augmenting_path", budget_constant() * kk * log2n(max(kk * kk, stream.n)), "c*k*log2(max(k^2,n)+1)")
    return _AlternatingSearch(stream, M, meter, ledger, visited).run(stop_at_path=True)


def augment(M: Matching, path: list[int]) -> None:
    for i in range(0, len(path) - 1, 2):
        M.add(path[i], path[i + 1])


def maximum_matching(
    stream: Stream,
    k: int,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
) -> Matching:
    """Greedy seed, then augment along streamed alternating paths until none is left.

    Raises :class:`MatchingOverflowError` once the matching would exceed 2k.
    """
    meter, ledger = meters(meter, ledger)
    kk = max(k, 1)
    if stream.model is StreamModel.AL:
        meter.arm("maximum_matching", KERNEL_PASS_C * (kk + 1) ** 2, "C*(k+1)^2")
    else:
        meter.arm("maximum_matching", KERNEL_PASS_C * (kk + 1) ** 3, "C*(k+1)^3")
    ledger.arm("maximum_matching", budget_constant() * kk * log2n(max(kk * kk, stream.n)), "c*k*log2(max(k^2,n)+1)")
    bound = 2 * k
    M = greedy_maximal_matching(stream, meter, ledger, bound=bound)
    held = ledger.charge(_matching_bits(stream.n, M.size), "matching")
    try:
        while True:
            path = find_augmenting_path(stream, M, meter, ledger)
            if path is None:
                return M
            if M.size == bound:
                raise MatchingOverflowError(bound)
            held.resize(_matching_bits(stream.n, M.size + 1))
            augment(M, path)
    finally:
        held.release()


def koenig_cover(
    stream: Stream,
    M: Matching,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
) -> set[int]:
    """Minimum vertex cover ``(V - S) | T`` of a bipartite stream from a maximum matching.

    Z is everything reachable from the free left vertices by alternating
    paths; S and T are its left and right parts.  T is exactly the set of
    right vertices whose matched edge the search marks, so the same
    streamed DFS serves.
    """
    meter, ledger = meters(meter, ledger)
    kk = max(M.size, 1)
    cost = upstream_cost(stream)
    if stream.model is StreamModel.AL:
        meter.arm("koenig_cover", KERNEL_PASS_C * (kk + 1) * cost, "C*(k+1)")
    else:
        meter.arm("koenig_cover", KERNEL_PASS_C * (kk + 1) ** 2 * cost, "C*(k+1)^2")
    ledger.arm("koenig_cover", budget_constant() * kk * log2n(max(kk * kk, stream.n)), "c*k*log2(max(k^2,n)+1)")
    search = _AlternatingSearch(stream, M, meter, ledger, None)
    search.run(stop_at_path=False)
    T = set(search.visited)
    reached_left = {M.mate[y] for y in T}
    with ledger.vertex_ids(stream.n, M.size, "cover"):
        return {x for x in M.mate if x <= M.half and x not in reached_left} | T


@dataclass
class NTSets:
    C0: frozenset[int]
    V0: frozenset[int]


def nt_sets(cover: Iterable[int], n: int) -> NTSets:
    """Split original vertices by how many of v, v + n the cover of B contains (two: C0, one: V0)."""
    chosen = set(cover)
    C0, V0 = set(), set()
    for v in {x if x <= n else x - n for x in chosen}:
        both = v in chosen and v + n in chosen
        (C0 if both else V0).add(v)
    return NTSets(frozenset(C0), frozenset(V0))


# -- full pipeline --------------------------------------------------------------


@dataclass
class KernelOutput:
    verdict: str
    k: int
    model: StreamModel
    k_prime: int | None = None
    S: tuple[int, ...] = ()
    C0: tuple[int, ...] = ()
    V0: tuple[int, ...] = ()
    graph: Graph | None = None
    reason: str = ""
    passes: int = 0
    pass_budget: int | None = None
    peak_bits: int = 0
    bit_budget: float | None = None
    matching_size: int | None = None
    # intermediate results, kept for inspection
    buss: BussResult | None = field(default=None, repr=False)
    matching: Matching | None = field(default=None, repr=False)
    cover: frozenset[int] | None = field(default=None, repr=False)

    @property
    def is_no(self) -> bool:
        return self.verdict == NO

    def stream(self) -> GraphStream:
        """The kernel G[V0] (ids relabelled 1..|V0| in increasing original order) in the input's model."""
        if self.graph is None:
            raise ValueError("a NO verdict has no kernel")
        return build_stream(self.graph, self.model)

    def provenance(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "model": self.model.name,
            "k": self.k,
            "k_prime": self.k_prime,
            "S": list(self.S),
            "C0": list(self.C0),
            "V0": list(self.V0),
            "kernel_vertices": None if self.graph is None else self.graph.n,
            "kernel_edges": None if self.graph is None else self.graph.m,
            "passes": self.passes,
            "pass_budget": self.pass_budget,
            "pass_constant": KERNEL_PASS_C,
            "peak_bits": self.peak_bits,
            "bit_budget": self.bit_budget,
        }


def kernel_pass_budget(model: StreamModel, k: int) -> int:
    kk = max(k, 1)
    return KERNEL_PASS_C * (kk + 1) ** (2 if model is StreamModel.AL else 3)


def kernelize(
    stream: Stream,
    k: int,
    meter: PassMeter | None = None,
    ledger: MemoryLedger | None = None,
    *,
    cached: bool = False,
) -> KernelOutput:
    """Kernel with at most 2k' vertices, or a NO verdict.

    (G, k) is a YES instance exactly when (kernel, k') is.  VA input is read
    as EA.  Pass counts refer to the original stream; ``cached`` only saves
    time.
    """
    meter, ledger = meters(meter, ledger)
    model = StreamModel.AL if stream.model is StreamModel.AL else StreamModel.EA
    kk = max(k, 1)
    meter.arm("kernelize", kernel_pass_budget(model, k), "C*(k+1)^2" if model is StreamModel.AL else "C*(k+1)^3")
    ledger.arm("kernelize", budget_constant() * kk * log2n(max(kk * kk, 2 * stream.n)), "c*k*log2(max(k^2,2n)+1)")
    out = KernelOutput(NO, k, model)

    def finish(result: KernelOutput) -> KernelOutput:
        result.passes = meter.passes_used
        result.pass_budget = meter.budget
        result.peak_bits = ledger.peak_bits
        result.bit_budget = ledger.budget_bits
        return result

    buss = buss_goldsmith(stream, k, meter, ledger, cached=cached)
    out.S = buss.S
    out.buss = buss
    if buss.is_no:
        out.reason = buss.reason
        return finish(out)
    n = stream.n
    held = ledger.vertex_ids(n, len(buss.S), "S")
    try:
        B = bipartite_double(buss.kernel, cached=cached)
        try:
            M = maximum_matching(B, buss.k1, meter, ledger)
        except MatchingOverflowError:
            out.reason = f"matching of the doubled graph exceeds 2*k1 = {2 * buss.k1}"
            return finish(out)
        out.matching_size = M.size
        out.matching = M
        with ledger.charge(_matching_bits(B.n, M.size), "matching"):
            cover = koenig_cover(B, M, meter, ledger)
        out.cover = frozenset(cover)
        nt = nt_sets(cover, n)
        with ledger.vertex_ids(n, len(nt.C0) + len(nt.V0), "C0 and V0"):
            out.C0, out.V0 = tuple(sorted(nt.C0)), tuple(sorted(nt.V0))
            k_prime = buss.k1 - len(nt.C0)
            out.k_prime = k_prime
            if k_prime < 0:
                out.reason = f"C0 alone needs {len(nt.C0)} > k1 = {buss.k1} vertices"
                return finish(out)
            if len(nt.V0) > 2 * k_prime:
                out.reason = f"|V0| = {len(nt.V0)} exceeds 2k' = {2 * k_prime}"
                return finish(out)
            out.graph = _emit_induced(buss.kernel, nt.V0, meter)
            out.verdict = KERNEL
            return finish(out)
    finally:
        held.release()


def _emit_induced(stream: Stream, keep: frozenset[int], meter: PassMeter) -> Graph:
    """Final pass: the edges of ``stream`` inside ``keep``, relabelled densely."""
    order = sorted(keep)
    relabel = {v: i for i, v in enumerate(order, start=1)}
    edges = set()
    for it in stream.begin_pass(meter):
        for u, v in _item_edges(it):
            if u in relabel and v in relabel:
                a, b = relabel[u], relabel[v]
                edges.add((min(a, b), max(a, b)))
    return Graph(len(order), sorted(edges))
