"""Random instances with a planted modulator, used by tests and the bench harness."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph


@dataclass
class PlantedInstance:
    graph: Graph
    X: tuple[int, ...]
    cliques: list[list[int]] | None = None


def planted_vertex_cover(
    n: int,
    k: int,
    seed: int,
    p_inside: float | None = None,
    p_cross: float | None = None,
    attach_all: bool | None = None,
) -> PlantedInstance:
    """Graph on ``n`` vertices whose edges all touch a random k-set X.

    Densities default to seeded random choices so that a batch of seeds mixes
    sparse, dense, connected and disconnected instances.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    rng = random.Random(seed)
    X = tuple(sorted(rng.sample(range(1, n + 1), k)))
    inside = set(X)
    p_inside = rng.choice([0.0, 0.2, 0.5, 0.9]) if p_inside is None else p_inside
    p_cross = rng.choice([0.05, 0.2, 0.5]) if p_cross is None else p_cross
    attach_all = rng.random() < 0.8 if attach_all is None else attach_all

    g = Graph(n)
    for i, x in enumerate(X):
        for y in X[i + 1 :]:
            if rng.random() < p_inside:
                g.add_edge(x, y)
    for w in range(1, n + 1):
        if w in inside or not X:
            continue
        nbrs = [x for x in X if rng.random() < p_cross]
        if attach_all and not nbrs:
            nbrs = [rng.choice(X)]
        for x in nbrs:
            g.add_edge(x, w)
    return PlantedInstance(g, X)


def planted_cliques(
    n: int,
    k: int,
    ell: int,
    seed: int,
    p_inside: float | None = None,
    p_cross: float | None = None,
    attach_all: bool | None = None,
) -> PlantedInstance:
    """X of size k plus a partition of the other vertices into at most ``ell`` cliques."""
    if not 0 <= k <= n or ell < 1:
        raise ValueError(f"bad planted-cliques parameters n={n}, k={k}, ell={ell}")
    rng = random.Random(seed)
    X = tuple(sorted(rng.sample(range(1, n + 1), k)))
    inside = set(X)
    rest = [v for v in range(1, n + 1) if v not in inside]
    rng.shuffle(rest)
    parts = min(ell, len(rest))
    cliques: list[list[int]] = [[] for _ in range(parts)]
    for i, v in enumerate(rest):
        # first fill each clique once so none is empty, then place at random
        cliques[i if i < parts else rng.randrange(parts)].append(v)
    p_inside = rng.choice([0.0, 0.3, 0.8]) if p_inside is None else p_inside
    p_cross = rng.choice([0.02, 0.1, 0.4]) if p_cross is None else p_cross
    attach_all = rng.random() < 0.8 if attach_all is None else attach_all

    g = Graph(n)
    for i, x in enumerate(X):
        for y in X[i + 1 :]:
            if rng.random() < p_inside:
                g.add_edge(x, y)
    for members in cliques:
        members.sort()
        for i, u in enumerate(members):
            for w in members[i + 1 :]:
                g.add_edge(u, w)
            for x in X:
                if rng.random() < p_cross:
                    g.add_edge(x, u)
        if attach_all and X and not any(g.neighbors(u) & inside for u in members):
            g.add_edge(rng.choice(X), rng.choice(members))
    return PlantedInstance(g, X, cliques)
