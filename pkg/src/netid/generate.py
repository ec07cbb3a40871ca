"""Seeded random graphs for testing and the ``gen`` command."""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError
from .graph import Edge, MetrizedGraph


def generate_random_graph(n: int, edge_prob: float, length_range=(0.1, 10.0), seed: int = 0) -> MetrizedGraph:
    """Connected simple graph on vertices named ``v0 .. v{n-1}``.

    A random recursive spanning tree guarantees connectivity; every other
    pair is then joined independently with probability ``edge_prob``.
    Lengths are uniform on ``length_range``.  Vertices are ordered by first
    appearance in the edge list, so the graph survives a serialize/parse
    round trip unchanged.
    """
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if not 0.0 <= edge_prob <= 1.0:
        raise PreconditionError("edge_prob must lie in [0, 1]")
    lo, hi = length_range
    if not 0 < lo <= hi:
        raise PreconditionError("length range must satisfy 0 < low <= high")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    pairs = set()
    for pos in range(1, n):
        parent = order[rng.integers(pos)]
        pairs.add((min(order[pos], parent), max(order[pos], parent)))
    rows, cols = np.triu_indices(n, 1)
    extra = rng.random(rows.size) < edge_prob
    pairs.update(zip(rows[extra].tolist(), cols[extra].tolist()))
    pairs = sorted((int(a), int(b)) for a, b in pairs)
    lengths = rng.uniform(lo, hi, size=len(pairs))
    vertices = tuple(f"v{i}" for i in range(n))
    return MetrizedGraph.from_edges(Edge(vertices[a], vertices[b], float(x)) for (a, b), x in zip(pairs, lengths))


def generate_random_multigraph(n: int, extra_edges: int, loops: int, length_range=(0.1, 10.0), seed: int = 0) -> MetrizedGraph:
    """Connected multigraph with parallel edges and self-loops.

    Starts from a random spanning tree, then adds ``extra_edges`` edges
    between random (possibly already adjacent) distinct vertices and
    ``loops`` self-loops at random vertices.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    rng = np.random.default_rng(seed)
    lo, hi = length_range
    vertices = tuple(f"v{i}" for i in range(n))
    edges = []
    for pos in range(1, n):
        edges.append((pos, int(rng.integers(pos))))
    if n > 1:
        for _ in range(extra_edges):
            a, b = rng.choice(n, size=2, replace=False)
            edges.append((int(a), int(b)))
    for _ in range(loops):
        v = int(rng.integers(n))
        edges.append((v, v))
    rng.shuffle(edges)
    lengths = rng.uniform(lo, hi, size=len(edges))
    if not edges:
        return MetrizedGraph(vertices, ())
    return MetrizedGraph.from_edges(Edge(vertices[a], vertices[b], float(x)) for (a, b), x in zip(edges, lengths))
