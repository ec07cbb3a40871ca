"""Metrized graphs: parsing, validation, canonical subdivision and conductances.

A metrized graph is stored as an ordered vertex list plus a list of edges
``(a, b, length)``.  Lengths are resistances; their reciprocals are
conductances.  The vertex order fixes matrix indexing everywhere else in the
package and is the first-appearance order of the input.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import (
    ConnectivityError,
    EdgeLengthError,
    GraphParseError,
    PreconditionError,
)

SUBDIVISION_PREFIX = "__sub"


class Edge(NamedTuple):
    a: str
    b: str
    length: float

    @property
    def is_loop(self) -> bool:
        return self.a == self.b


@dataclass(frozen=True)
class MetrizedGraph:
    """Connected weighted multigraph with positive edge lengths.

    Parameters
    ----------
    vertices : tuple of str
        Vertex identifiers; the order fixes matrix indexing.
    edges : tuple of Edge
        Edges, possibly including self-loops and parallel edges.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if not self.vertices:
            raise PreconditionError("a graph needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise PreconditionError("duplicate vertex identifiers")
        known = set(self.vertices)
        for edge in self.edges:
            if edge.a not in known or edge.b not in known:
                raise PreconditionError(f"edge {edge} has an unknown endpoint")
            _check_length(edge.length)
        _check_connected(self.vertices, self.edges)

    @classmethod
    def from_edges(cls, edges: Iterable) -> "MetrizedGraph":
        """Build a graph whose vertices appear in first-appearance order."""
        edges = [Edge(str(a), str(b), float(length)) for a, b, length in edges]
        order: dict[str, None] = {}
        for edge in edges:
            order.setdefault(edge.a)
            order.setdefault(edge.b)
        return cls(tuple(order), tuple(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    def index(self, vertex) -> int:
        """Position of ``vertex`` (an id, or already an integer index)."""
        return vertex_index(self.vertices, vertex)

    def valence(self, vertex: str) -> int:
        """Number of edge directions leaving ``vertex``; a loop counts twice."""
        return sum((e.a == vertex) + (e.b == vertex) for e in self.edges)

    @property
    def is_optimal(self) -> bool:
        """True when the graph has no self-loops and no parallel edges."""
        seen = set()
        for edge in self.edges:
            if edge.is_loop:
                return False
            key = frozenset((edge.a, edge.b))
            if key in seen:
                return False
            seen.add(key)
        return True


def vertex_index(vertices, vertex) -> int:
    if isinstance(vertex, (int, np.integer)) and not isinstance(vertex, bool):
        if not 0 <= vertex < len(vertices):
            raise PreconditionError(f"vertex index {vertex} out of range")
        return int(vertex)
    try:
        return vertices.index(vertex)
    except ValueError:
        raise PreconditionError(f"unknown vertex {vertex!r}") from None


def _check_length(length):
    if not (math.isfinite(length) and length > 0):
        raise EdgeLengthError(f"edge length must be positive and finite, got {length!r}")


def _check_connected(vertices, edges):
    neighbours = {v: set() for v in vertices}
    for a, b, _ in edges:
        neighbours[a].add(b)
        neighbours[b].add(a)
    seen = {vertices[0]}
    queue = deque(seen)
    while queue:
        for w in neighbours[queue.popleft()]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != len(vertices):
        missing = [v for v in vertices if v not in seen]
        raise ConnectivityError(
            f"graph is disconnected; {len(missing)} vertices unreachable from "
            f"{vertices[0]!r} (e.g. {missing[0]!r})"
        )


def parse_edge_list(text: str) -> MetrizedGraph:
    """Parse an edge-list document.

    One edge per line as ``<id_a> <id_b> <length>``; ``#`` starts a comment
    and blank lines are ignored.  Repeated lines give parallel edges.

    Raises
    ------
    GraphParseError
        On a line that does not have exactly three fields or whose length is
        not a number.
    EdgeLengthError
        On a nonpositive or nonfinite length.
    ConnectivityError
        If the edges do not form a single component.
    """
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise GraphParseError(lineno, raw, "expected '<id_a> <id_b> <length>'")
        a, b, token = fields
        try:
            length = float(token)
        except ValueError:
            raise GraphParseError(lineno, raw, f"bad length {token!r}") from None
        try:
            _check_length(length)
        except EdgeLengthError as exc:
            raise EdgeLengthError(f"line {lineno}: {exc}") from None
        edges.append(Edge(a, b, length))
    if not edges:
        raise GraphParseError(0, text[:40], "document contains no edges")
    return MetrizedGraph.from_edges(edges)


def read_edge_list(path) -> MetrizedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def serialize(g: MetrizedGraph) -> str:
    """Edge-list text that parses back to ``g`` exactly."""
    return "".join(f"{a} {b} {length!r}\n" for a, b, length in g.edges)


def optimalize(g: MetrizedGraph) -> MetrizedGraph:
    """Subdivide edges until the graph is simple, preserving resistances.

    A self-loop of length ``L`` becomes a triangle through two fresh vertices
    with three segments of length ``L/3``.  In a bundle of parallel edges the
    first edge is kept and each later one is split at its midpoint.  Fresh
    vertices are named ``__sub<k>`` and appended after the original vertices.
    Already-optimal graphs are returned unchanged.
    """
    if g.is_optimal:
        return g
    taken = set(g.vertices)
    counter = 0

    def fresh():
        nonlocal counter
        while f"{SUBDIVISION_PREFIX}{counter}" in taken:
            counter += 1
        name = f"{SUBDIVISION_PREFIX}{counter}"
        taken.add(name)
        return name

    vertices = list(g.vertices)
    edges = []
    seen = set()
    for a, b, length in g.edges:
        if a == b:
            u, w = fresh(), fresh()
            vertices += [u, w]
            third = length / 3
            edges += [Edge(a, u, third), Edge(u, w, third), Edge(w, a, third)]
            continue
        key = frozenset((a, b))
        if key in seen:
            m = fresh()
            vertices.append(m)
            half = length / 2
            edges += [Edge(a, m, half), Edge(m, b, half)]
        else:
            seen.add(key)
            edges.append(Edge(a, b, length))
    return MetrizedGraph(tuple(vertices), tuple(edges))


def perturb_edge(g: MetrizedGraph, index: int, scale: float) -> MetrizedGraph:
    """Copy of ``g`` with the length of edge ``index`` multiplied by ``scale``."""
    if not 0 <= index < g.e:
        raise PreconditionError(f"edge index {index} out of range (graph has {g.e} edges)")
    edges = list(g.edges)
    a, b, length = edges[index]
    edges[index] = Edge(a, b, length * scale)
    return MetrizedGraph(g.vertices, tuple(edges))


@dataclass(frozen=True)
class ConductanceProfile:
    """Edge conductances ``C_pq = 1/L`` and vertex totals ``C_p``.

    ``pairwise[p, q]`` is zero on the diagonal and for non-adjacent pairs.
    """

    vertices: tuple[str, ...]
    pairwise: np.ndarray
    vertex: np.ndarray

    def adjacency(self) -> list[set[int]]:
        return [set(np.flatnonzero(row)) for row in self.pairwise]


def conductance_profile(g: MetrizedGraph) -> ConductanceProfile:
    """Conductances of an optimal graph.

    Raises
    ------
    PreconditionError
        If ``g`` has loops or parallel edges.
    """
    if not g.is_optimal:
        raise PreconditionError("conductance_profile needs an optimal graph; call optimalize first")
    n = g.n
    pairwise = np.zeros((n, n))
    for a, b, length in g.edges:
        i, j = g.index(a), g.index(b)
        pairwise[i, j] = pairwise[j, i] = 1.0 / length
    pairwise.setflags(write=False)
    vertex = pairwise.sum(axis=1)
    vertex.setflags(write=False)
    return ConductanceProfile(g.vertices, pairwise, vertex)
