"""The reversible random walk of a network and a Monte-Carlo check of it.

From vertex ``i`` the walk moves to ``t`` with probability ``C_it / C_i``.
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError
from .graph import ConductanceProfile, MetrizedGraph, conductance_profile, optimalize, vertex_index


class TransitionKernel:
    """Row-stochastic transition matrix with memoized powers.

    Parameters
    ----------
    vertices : tuple of str
    matrix : (n, n) ndarray
        One-step probabilities ``p_it``.
    conductances : (n,) ndarray
        Vertex conductances ``C_i``; the stationary weights of the walk.
    """

    def __init__(self, vertices, matrix, conductances):
        self.vertices = tuple(vertices)
        self.matrix = np.array(matrix, dtype=float)
        self.matrix.setflags(write=False)
        self.conductances = np.array(conductances, dtype=float)
        self.conductances.setflags(write=False)
        self._powers = [self.matrix]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex) -> int:
        return vertex_index(self.vertices, vertex)

    def power(self, k: int) -> np.ndarray:
        if isinstance(k, bool) or int(k) != k or k < 1:
            raise PreconditionError(f"step count must be a positive integer, got {k!r}")
        k = int(k)
        while len(self._powers) < k:
            nxt = self._powers[-1] @ self.matrix
            nxt.setflags(write=False)
            self._powers.append(nxt)
        return self._powers[k - 1]

    def traces(self, kmax: int) -> np.ndarray:
        """``tr(P^k)`` for ``k = 1..kmax``."""
        if kmax < 1:
            raise PreconditionError("kmax must be at least 1")
        return np.array([np.trace(self.power(k)) for k in range(1, kmax + 1)])


def transition_matrix(c: ConductanceProfile) -> TransitionKernel:
    if np.any(c.vertex <= 0):
        raise PreconditionError("every vertex needs positive conductance (graph with at least two vertices)")
    return TransitionKernel(c.vertices, c.pairwise / c.vertex[:, None], c.vertex)


def kstep(kern: TransitionKernel, k: int) -> np.ndarray:
    """``P^k``; ``k`` must be at least 1."""
    return kern.power(k)


def trace_sequence(kern: TransitionKernel, kmax: int) -> list[float]:
    return [float(x) for x in kern.traces(kmax)]


def simulate_kstep_frequencies(g, start, k: int, walks: int, seed: int) -> np.ndarray:
    """Empirical distribution of the walk position after exactly ``k`` steps.

    ``g`` may be a graph (optimalized first) or a :class:`TransitionKernel`.
    The output is fully determined by ``seed``.
    """
    if walks < 1:
        raise PreconditionError("need at least one walk")
    if k < 0:
        raise PreconditionError("step count must be nonnegative")
    if isinstance(g, MetrizedGraph):
        kern = transition_matrix(conductance_profile(optimalize(g)))
    else:
        kern = g
    cum = np.cumsum(kern.matrix, axis=1)
    # the trailing block of each row is exactly the row total; pin it to 1
    cum = np.where(cum == cum[:, -1:], 1.0, cum)
    rng = np.random.default_rng(seed)
    pos = np.full(walks, kern.index(start))
    for _ in range(k):
        u = rng.random(walks)
        nxt = np.empty_like(pos)
        for v in range(kern.n):
            here = pos == v
            nxt[here] = np.searchsorted(cum[v], u[here], side="right")
        pos = nxt
    return np.bincount(pos, minlength=kern.n) / walks
