"""In-memory simple undirected graphs with dense vertex ids 1..n.

A :class:`Graph` is only ever handed to stream builders and offline oracles;
streaming algorithms see it through a :class:`~streamgraph.stream.GraphStream`.
"""

from __future__ import annotations

import io
import os
from itertools import chain
from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import GraphFormatError


class Graph:
    """Simple undirected graph on vertices ``1..n``.

    Self-loops and parallel edges are rejected when an edge is added.
    """

    __slots__ = ("n", "_adj", "_m", "_csr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphFormatError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n + 1)]
        self._m = 0
        # oracle-side cache of a scipy CSR matrix, dropped on every mutation
        self._csr = None
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            raise GraphFormatError(f"edge ({u}, {v}) has an endpoint outside 1..{self.n}")
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        if v in self._adj[u]:
            raise GraphFormatError(f"duplicate edge ({u}, {v})")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._m += 1
        self._csr = None

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Bulk constructor with the checks of :meth:`add_edge` applied to all pairs at once."""
        arr = np.fromiter(chain.from_iterable(pairs), dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 1 or arr.max() > n):
            raise GraphFormatError(f"edge endpoint outside 1..{n}")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise GraphFormatError("self-loop")
        lo, hi = arr.min(axis=1), arr.max(axis=1)
        if len(np.unique(lo * (n + 1) + hi)) != len(arr):
            raise GraphFormatError("duplicate edge")
        src = np.concatenate([arr[:, 0], arr[:, 1]])
        dst = np.concatenate([arr[:, 1], arr[:, 0]])
        order = np.argsort(src, kind="stable")
        src, dst = src[order], dst[order]
        indptr = np.searchsorted(src, np.arange(1, n + 2))
        g = cls(n)
        nbrs = dst.tolist()
        bounds = indptr.tolist()
        g._adj[1:] = [set(nbrs[bounds[i] : bounds[i + 1]]) for i in range(n)]
        g._m = len(arr)
        return g

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> set[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return sorted((u, v) for u in range(1, self.n + 1) for v in self._adj[u] if u < v)

    def induced(self, keep: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph relabelled densely; returns it with the old->new id map."""
        order = sorted(set(keep))
        relabel = {v: i for i, v in enumerate(order, start=1)}
        sub = Graph(len(order))
        for u in order:
            for v in self._adj[u]:
                if u < v and v in relabel:
                    sub.add_edge(relabel[u], relabel[v])
        return sub, relabel

    def without(self, removed: Iterable[int]) -> "Graph":
        """Induced subgraph on the remaining vertices (relabelled densely)."""
        gone = set(removed)
        return self.induced(v for v in self.vertices() if v not in gone)[0]

    def copy(self) -> "Graph":
        return Graph(self.n, self.edges())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges() == other.edges()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def write_graph(graph: Graph, dest: str | os.PathLike | TextIO) -> None:
    """Write ``n m`` followed by one ``u v`` line per edge (``u < v``)."""
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges())
    text = "\n".join(lines) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", newline="\n") as fh:
            fh.write(text)


def parse_graph(text: str) -> Graph:
    tokens = _lines(text)
    try:
        header = next(tokens)
    except StopIteration:
        raise GraphFormatError("empty graph file") from None
    if len(header) != 2:
        raise GraphFormatError("header must be 'n m'")
    n, m = _ints(header)
    graph = Graph(n)
    count = 0
    for fields in tokens:
        if len(fields) != 2:
            raise GraphFormatError(f"edge line must be 'u v', got {' '.join(fields)!r}")
        u, v = _ints(fields)
        if u >= v:
            raise GraphFormatError(f"edge line requires u < v, got {u} {v}")
        graph.add_edge(u, v)
        count += 1
    if count != m:
        raise GraphFormatError(f"header declares {m} edges but file lists {count}")
    return graph


def read_graph(src: str | os.PathLike | TextIO) -> Graph:
    if hasattr(src, "read"):
        return parse_graph(src.read())
    with open(src) as fh:
        return parse_graph(fh.read())


def graph_to_text(graph: Graph) -> str:
    buf = io.StringIO()
    write_graph(graph, buf)
    return buf.getvalue()


def _lines(text: str) -> Iterator[list[str]]:
    for raw in text.splitlines():
        fields = raw.split()
        if fields:
            yield fields


def _ints(fields: list[str]) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise GraphFormatError(f"non-integer token in {' '.join(fields)!r}") from None
