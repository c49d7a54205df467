"""Offline ground truth: BFS, diameter, connectivity, vertex cover, bipartite matching.

These read the whole :class:`Graph` in memory and favour obvious correctness.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import chain
from typing import Iterable

import numpy as np
from numba import njit
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, maximum_bipartite_matching

from .graph import Graph

INF = math.inf


def bfs_distances(graph: Graph, source: int) -> dict[int, float]:
    """Hop distances from ``source``; unreachable vertices map to ``math.inf``."""
    dist: dict[int, float] = {v: INF for v in graph.vertices()}
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in graph.neighbors(u):
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _adjacency(graph: Graph) -> csr_matrix:
    if graph._csr is None:
        graph._csr = _build_adjacency(graph)
    return graph._csr


def _build_adjacency(graph: Graph) -> csr_matrix:
    n = graph.n
    adj = graph._adj[1:]
    degrees = np.fromiter(map(len, adj), dtype=np.int64, count=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    indices = np.fromiter(chain.from_iterable(adj), dtype=np.int64, count=int(indptr[-1])) - 1
    data = np.ones(len(indices), dtype=np.int8)
    return csr_matrix((data, indices, indptr), shape=(n, n))


def exact_diameter(graph: Graph) -> float:
    """Largest hop distance over all pairs; ``inf`` if disconnected, 0 for one vertex."""
    if graph.n < 1:
        raise ValueError("diameter needs at least one vertex")
    if graph.n == 1:
        return 0
    if not is_connected(graph):
        return INF
    adj = _adjacency(graph)
    indptr, indices = adj.indptr.astype(np.int64), adj.indices.astype(np.int64)
    n, words = graph.n, (graph.n + 63) // 64
    if n <= BITSET_MAX_VERTICES:
        # all sources at once as bitsets; worth it while the diameter stays small
        # next to n, so give up once it has cost as much as n BFS runs
        round_cost = words * (2 * graph.m + n)
        rounds = _bitset_levels(indptr, indices, max(2, n * (n + 2 * graph.m) // round_cost))
        if rounds >= 0:
            return int(rounds)
    return int(_max_bfs_depth(indptr, indices))


BITSET_MAX_VERTICES = 20_000


@njit(cache=True)
def _bitset_levels(indptr, indices, max_rounds):
    # reach[v] holds every vertex within the current radius of v; a connected
    # graph's diameter is the number of rounds until nothing grows
    n = indptr.shape[0] - 1
    words = (n + 63) // 64
    reach = np.zeros((n, words), dtype=np.uint64)
    for v in range(n):
        reach[v, v // 64] |= np.uint64(1) << np.uint64(v % 64)
    nxt = reach.copy()
    rounds = 0
    while True:
        changed = False
        for v in range(n):
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                for t in range(words):
                    nxt[v, t] |= reach[u, t]
        for v in range(n):
            for t in range(words):
                if nxt[v, t] != reach[v, t]:
                    changed = True
                    reach[v, t] = nxt[v, t]
        if not changed:
            return rounds
        rounds += 1
        if rounds > max_rounds:
            return -1


@njit(cache=True)
def _max_bfs_depth(indptr, indices):
    # textbook BFS from every vertex of a connected graph
    n = indptr.shape[0] - 1
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    best = 0
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        if dist[queue[tail - 1]] > best:
            best = dist[queue[tail - 1]]
    return best


def eccentricity(graph: Graph, source: int) -> float:
    return max(bfs_distances(graph, source).values())


def is_connected(graph: Graph) -> bool:
    if graph.n <= 1:
        return True
    count, _ = connected_components(_adjacency(graph), directed=False)
    return count == 1


def is_cover(graph: Graph, cover: Iterable[int]) -> bool:
    chosen = set(cover)
    return all(u in chosen or v in chosen for u, v in graph.edges())


def min_vertex_cover(graph: Graph, k_max: int) -> set[int] | None:
    """A minimum vertex cover if one of size at most ``k_max`` exists, else ``None``.

    Iterative deepening over a bounded search tree that branches on a
    maximum-degree vertex: either it joins the cover or all its neighbours do.
    """
    adj = {v: set(graph.neighbors(v)) for v in graph.vertices() if graph.degree(v)}
    for budget in range(0, k_max + 1):
        found = _cover_within(adj, budget)
        if found is not None:
            return found
    return None


def vc_decision(graph: Graph, k: int) -> bool:
    return min_vertex_cover(graph, k) is not None


def _cover_within(adj: dict[int, set[int]], k: int) -> set[int] | None:
    live = {v: ns for v, ns in adj.items() if ns}
    if not live:
        return set()
    if k <= 0:
        return None
    m = sum(len(ns) for ns in live.values()) // 2
    v = max(live, key=lambda x: (len(live[x]), -x))
    if m > k * len(live[v]):
        return None
    if len(live[v]) == 1:
        # max degree one: the remaining graph is a matching
        return _matching_cover(live, k)

    sub = _remove(live, {v})
    rest = _cover_within(sub, k - 1)
    if rest is not None:
        return rest | {v}
    nbrs = set(live[v])
    if len(nbrs) <= k:
        rest = _cover_within(_remove(live, nbrs), k - len(nbrs))
        if rest is not None:
            return rest | nbrs
    return None


def _matching_cover(live: dict[int, set[int]], k: int) -> set[int] | None:
    cover = {min(v, next(iter(ns))) for v, ns in live.items()}
    return cover if len(cover) <= k else None


def _remove(adj: dict[int, set[int]], gone: set[int]) -> dict[int, set[int]]:
    return {v: ns - gone for v, ns in adj.items() if v not in gone}


def two_coloring(graph: Graph) -> dict[int, int] | None:
    color: dict[int, int] = {}
    for s in graph.vertices():
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in graph.neighbors(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def reference_max_matching(graph: Graph, left: Iterable[int] | None = None) -> list[tuple[int, int]]:
    """Maximum matching of a bipartite graph as ``(left, right)`` pairs (Hopcroft-Karp via scipy).

    ``left`` fixes the sides; without it a 2-colouring is used.  Raises
    ``ValueError`` when the graph is not bipartite with respect to the sides.
    """
    if left is None:
        color = two_coloring(graph)
        if color is None:
            raise ValueError("graph is not bipartite")
        side = {v for v, c in color.items() if c == 0}
    else:
        side = set(left)
        for u, v in graph.edges():
            if (u in side) == (v in side):
                raise ValueError(f"edge ({u}, {v}) does not cross the given bipartition")

    lefts = sorted(side)
    rights = sorted(v for v in graph.vertices() if v not in side)
    if not lefts or not rights or graph.m == 0:
        return []
    col = {v: i for i, v in enumerate(rights)}
    rows, cols = [], []
    for i, u in enumerate(lefts):
        for w in graph.neighbors(u):
            rows.append(i)
            cols.append(col[w])
    bi = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(lefts), len(rights)))
    match = maximum_bipartite_matching(bi, perm_type="column")
    return sorted((lefts[i], rights[j]) for i, j in enumerate(match) if j >= 0)
