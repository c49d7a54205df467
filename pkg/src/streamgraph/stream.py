"""Stream models, replayable graph streams and derived streams.

Three arrival models are supported:

* ``EA`` -- one item per edge, each edge exactly once per pass.
* ``VA`` -- one item per vertex; an edge is revealed with whichever endpoint
  arrives later.
* ``AL`` -- one item per vertex carrying its full adjacency list, so every
  edge is seen twice.

Algorithms never touch the backing :class:`~streamgraph.graph.Graph`; they
call :meth:`Stream.begin_pass`, which charges one pass to the supplied meter.
"""

from __future__ import annotations

import random
from enum import Enum
from functools import cached_property
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence, Union

import numpy as np

from .accounting import PassMeter
from .errors import GraphFormatError, ModelMismatchError
from .graph import Graph


class StreamModel(str, Enum):
    EA = "ea"
    VA = "va"
    AL = "al"

    @classmethod
    def parse(cls, value: "str | StreamModel") -> "StreamModel":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown stream model {value!r}; expected one of ea, va, al") from None

    def __str__(self) -> str:
        return self.name


class EdgeItem(NamedTuple):
    u: int
    v: int


class VertexItem(NamedTuple):
    v: int
    neighbors: tuple[int, ...]


Item = Union[EdgeItem, VertexItem]


class Stream:
    """Anything that can be traversed pass by pass."""

    model: StreamModel
    n: int

    def begin_pass(self, meter: PassMeter | None = None) -> Iterator[Item]:
        raise NotImplementedError


def require_model(stream: Stream, algorithm: str, *allowed: StreamModel) -> None:
    if stream.model not in allowed:
        expected = "/".join(str(m) for m in allowed)
        raise ModelMismatchError(algorithm, expected, stream.model)


class GraphStream(Stream):
    """Immutable, replayable item sequence.

    Safe to share between threads; each algorithm run brings its own meter.
    """

    def __init__(
        self,
        model: StreamModel | str,
        n: int,
        items: Iterable[Item],
        *,
        vertex_seed: int | None = None,
        neighbor_seed: int | None = None,
        validate: bool = True,
    ):
        self.model = StreamModel.parse(model)
        self.n = n
        self.items: tuple[Item, ...] = tuple(items)
        self.vertex_seed = vertex_seed
        self.neighbor_seed = neighbor_seed
        if validate:
            validate_items(self.model, n, self.items)

    def begin_pass(self, meter: PassMeter | None = None) -> Iterator[Item]:
        if meter is not None:
            meter.tick()
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Items of a VA/AL stream as ``(vertices, offsets, neighbors)`` arrays in stream order.

        This is the same item sequence in a flat layout for the compiled pass
        kernels; it carries no information beyond one pass.
        """
        if self.model is StreamModel.EA:
            raise ModelMismatchError("csr view", "VA/AL", self.model)
        verts = np.fromiter((it.v for it in self.items), dtype=np.int64, count=len(self.items))
        lengths = np.fromiter((len(it.neighbors) for it in self.items), dtype=np.int64, count=len(self.items))
        offsets = np.zeros(len(self.items) + 1, dtype=np.int64)
        np.cumsum(lengths, out=offsets[1:])
        flat = np.fromiter(
            (u for it in self.items for u in it.neighbors), dtype=np.int64, count=int(offsets[-1])
        )
        return verts, offsets, flat

    def trace_lines(self) -> list[str]:
        return trace_lines(self.items)

    def __repr__(self) -> str:
        return f"GraphStream(model={self.model}, n={self.n}, items={len(self.items)})"


class DerivedStream(Stream):
    """A stream recomputed from upstream passes every time it is traversed.

    ``produce()`` reads the upstream stream(s) with ``begin_pass(None)``;
    the pass cost is charged here instead, eagerly, as ``passes_per_pass``
    upstream passes per pass over this stream (also when the consumer stops
    early).  With ``cached=True`` the items are materialised on the first
    pass to save time; every pass is still charged the same amount.
    """

    def __init__(
        self,
        model: StreamModel | str,
        n: int,
        produce: Callable[[], Iterator[Item]],
        passes_per_pass: int,
        cached: bool = False,
        name: str = "derived",
    ):
        self.model = StreamModel.parse(model)
        self.n = n
        self._produce = produce
        self.passes_per_pass = passes_per_pass
        self.cached = cached
        self.name = name
        self._cache: tuple[Item, ...] | None = None

    def begin_pass(self, meter: PassMeter | None = None) -> Iterator[Item]:
        if meter is not None:
            meter.tick(self.passes_per_pass)
        if not self.cached:
            return self._produce()
        if self._cache is None:
            self._cache = tuple(self._produce())
        return iter(self._cache)

    def materialize(self, meter: PassMeter | None = None) -> GraphStream:
        # derived streams may leave ids unused (e.g. deleted vertices), so no coverage check
        return GraphStream(self.model, self.n, self.begin_pass(meter), validate=False)

    def __repr__(self) -> str:
        return f"DerivedStream({self.name}, model={self.model}, n={self.n})"


def upstream_cost(stream: Stream) -> int:
    """Passes over the original input charged per pass over ``stream``."""
    return getattr(stream, "passes_per_pass", 1)


def build_stream(
    graph: Graph,
    model: StreamModel | str,
    vertex_seed: int | None = None,
    neighbor_seed: int | None = None,
) -> GraphStream:
    """Stream ``graph`` under ``model``.

    ``None`` seeds keep natural order (vertices ascending, neighbours
    ascending); integer seeds shuffle vertex/edge order and within-item
    neighbour order deterministically.
    """
    model = StreamModel.parse(model)
    order = list(graph.vertices())
    if vertex_seed is not None:
        random.Random(vertex_seed).shuffle(order)
    nrng = random.Random(neighbor_seed) if neighbor_seed is not None else None

    def arrange(values: Iterable[int]) -> tuple[int, ...]:
        out = sorted(values)
        if nrng is not None:
            nrng.shuffle(out)
        return tuple(out)

    items: list[Item]
    if model is StreamModel.AL:
        items = [VertexItem(v, arrange(graph.neighbors(v))) for v in order]
    elif model is StreamModel.VA:
        pos = {v: i for i, v in enumerate(order)}
        items = [VertexItem(v, arrange(u for u in graph.neighbors(v) if pos[u] < pos[v])) for v in order]
    else:
        edges = graph.edges()
        if vertex_seed is not None:
            random.Random(vertex_seed).shuffle(edges)
        items = []
        for u, v in edges:
            if nrng is not None and nrng.random() < 0.5:
                u, v = v, u
            items.append(EdgeItem(u, v))
    return GraphStream(model, graph.n, items, vertex_seed=vertex_seed, neighbor_seed=neighbor_seed, validate=False)


def validate_items(model: StreamModel, n: int, items: Sequence[Item]) -> None:
    """Raise :class:`GraphFormatError` unless ``items`` form a valid pass under ``model``."""
    if model is StreamModel.EA:
        seen: set[tuple[int, int]] = set()
        for it in items:
            if not isinstance(it, EdgeItem):
                raise GraphFormatError(f"EA stream contains non-edge item {it!r}")
            _check_edge(it.u, it.v, n)
            key = (min(it.u, it.v), max(it.u, it.v))
            if key in seen:
                raise GraphFormatError(f"EA stream repeats edge {key}")
            seen.add(key)
        return

    arrived: set[int] = set()
    lists: dict[int, tuple[int, ...]] = {}
    for it in items:
        if not isinstance(it, VertexItem):
            raise GraphFormatError(f"{model} stream contains non-vertex item {it!r}")
        if not 1 <= it.v <= n:
            raise GraphFormatError(f"vertex {it.v} outside 1..{n}")
        if it.v in arrived:
            raise GraphFormatError(f"vertex {it.v} appears twice in one pass")
        if len(set(it.neighbors)) != len(it.neighbors):
            raise GraphFormatError(f"vertex {it.v} lists a neighbour twice")
        for u in it.neighbors:
            _check_edge(it.v, u, n)
            if model is StreamModel.VA and u not in arrived:
                raise GraphFormatError(f"VA edge ({u}, {it.v}) revealed before {u} arrived")
        arrived.add(it.v)
        lists[it.v] = it.neighbors
    if len(arrived) != n:
        raise GraphFormatError(f"{model} stream covers {len(arrived)} of {n} vertices")
    if model is StreamModel.AL:
        for v, nbrs in lists.items():
            for u in nbrs:
                if v not in lists[u]:
                    raise GraphFormatError(f"AL edge ({v}, {u}) missing from the item of {u}")


def reconstruct_edges(model: StreamModel, items: Iterable[Item]) -> list[tuple[int, int]]:
    """Edge multiset implied by one pass, one entry per undirected edge."""
    out: list[tuple[int, int]] = []
    for it in items:
        if isinstance(it, EdgeItem):
            out.append((min(it.u, it.v), max(it.u, it.v)))
        elif model is StreamModel.AL:
            out.extend((it.v, u) for u in it.neighbors if it.v < u)
        else:
            out.extend((min(it.v, u), max(it.v, u)) for u in it.neighbors)
    return sorted(out)


def stream_to_graph(stream: Stream, meter: PassMeter | None = None) -> Graph:
    """Collect one pass into a Graph (for oracles and file export)."""
    return Graph(stream.n, reconstruct_edges(stream.model, stream.begin_pass(meter)))


def trace_lines(items: Iterable[Item]) -> list[str]:
    lines = []
    for it in items:
        if isinstance(it, EdgeItem):
            lines.append(f"E {it.u} {it.v}")
        else:
            tail = " ".join(str(u) for u in it.neighbors)
            lines.append(f"V {it.v}: {tail}".rstrip())
    return lines


def _check_edge(u: int, v: int, n: int) -> None:
    if not (1 <= u <= n and 1 <= v <= n):
        raise GraphFormatError(f"edge ({u}, {v}) outside 1..{n}")
    if u == v:
        raise GraphFormatError(f"self-loop at vertex {u}")


def pass_arrays(stream: Stream, meter: PassMeter | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Begin one metered pass over a VA/AL stream and return its items in flat form."""
    items = stream.begin_pass(meter)
    if isinstance(stream, GraphStream):
        return stream.csr
    return GraphStream(stream.model, stream.n, items, validate=False).csr
