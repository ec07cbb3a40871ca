"""Resistance and voltage functions on the vertices of a network.

Two independent routes compute the same quantities:

* from the pseudoinverse ``L+`` (the primary route), and
* from the equilibrium measures ``nu^i``, the solutions of
  ``L u = e - n e_i`` with ``u_i = 0``.

The voltage ``j_p(q, s)`` is the potential at ``q`` relative to ``p`` when a
unit current enters at ``s`` and leaves at ``p``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .graph import vertex_index
from .spectral import DiscreteLaplacian, PseudoInverse, solve_centered

POSITIVITY_TOL = 1e-12


@dataclass(frozen=True)
class ResistanceMatrix:
    vertices: tuple[str, ...]
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex) -> int:
        return vertex_index(self.vertices, vertex)

    def __call__(self, p, q) -> float:
        return float(self.matrix[self.index(p), self.index(q)])


@dataclass(frozen=True)
class EquilibriumMeasure:
    vertices: tuple[str, ...]
    base: str
    values: np.ndarray

    def __getitem__(self, vertex) -> float:
        return float(self.values[vertex_index(self.vertices, vertex)])


@dataclass(frozen=True)
class EquilibriumTable:
    """All equilibrium measures at once; row ``i`` holds ``nu^i``."""

    vertices: tuple[str, ...]
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex) -> int:
        return vertex_index(self.vertices, vertex)

    def measure(self, i) -> EquilibriumMeasure:
        k = self.index(i)
        return EquilibriumMeasure(self.vertices, self.vertices[k], self.matrix[k])


def resistance_matrix(lp: PseudoInverse) -> ResistanceMatrix:
    """``r(p, q) = l+_pp - 2 l+_pq + l+_qq`` for every pair."""
    H = lp.matrix
    d = np.diag(H)
    r = (d[:, None] + d[None, :]) - 2.0 * H
    np.fill_diagonal(r, 0.0)
    r.setflags(write=False)
    return ResistanceMatrix(lp.vertices, r)


def voltage(lp: PseudoInverse, p, q, s) -> float:
    """``j_p(q, s) = l+_pp - l+_pq - l+_ps + l+_qs``."""
    H = lp.matrix
    p, q, s = lp.index(p), lp.index(q), lp.index(s)
    return float(H[p, p] - (H[p, q] + H[p, s]) + H[q, s])


def voltage_table(lp: PseudoInverse, s) -> np.ndarray:
    """Matrix ``V`` with ``V[i, t] = j_i(s, t)`` for a fixed current source ``s``."""
    H = lp.matrix
    k = lp.index(s)
    d = np.diag(H)
    return d[:, None] - (H[:, [k]] + H) + H[[k], :]


def voltage_from_resistance(r: ResistanceMatrix, p, q, s) -> float:
    """``j_p(q, s) = (r(p, q) + r(p, s) - r(q, s)) / 2``."""
    return 0.5 * (r(p, q) + r(p, s) - r(q, s))


def y_reduction(r: ResistanceMatrix, x, p, q) -> tuple[float, float, float]:
    """Branch voltages of the star equivalent seen from terminals ``x, p, q``.

    Returns ``(j_p(x, q), j_q(x, p), j_x(p, q))``.  Any two branches add up to
    the resistance between their terminals:
    ``r(p, x) = j_p(x, q) + j_x(p, q)`` and so on.
    """
    ix, ip, iq = r.index(x), r.index(p), r.index(q)
    if len({ix, ip, iq}) != 3:
        raise PreconditionError("y_reduction needs three distinct vertices")
    return (
        voltage_from_resistance(r, ip, ix, iq),
        voltage_from_resistance(r, iq, ix, ip),
        voltage_from_resistance(r, ix, ip, iq),
    )


def equilibrium_measure(lap: DiscreteLaplacian, i) -> EquilibriumMeasure:
    """Solve ``L u = e - n e_i`` with ``u_i = 0``.

    Values at the other vertices are potentials of a network fed at every
    vertex and drained at ``i``, so they should be positive; a
    ``RuntimeWarning`` is issued if any is not.
    """
    k = lap.index(i)
    b = np.ones(lap.n)
    b[k] -= lap.n
    u = solve_centered(lap, b, k)
    others = np.delete(u, k)
    if others.size and others.min() <= POSITIVITY_TOL:
        warnings.warn(f"equilibrium measure of {lap.vertices[k]!r} is not positive off its base", RuntimeWarning, stacklevel=2)
    u.setflags(write=False)
    return EquilibriumMeasure(lap.vertices, lap.vertices[k], u)


def equilibrium_table(lap: DiscreteLaplacian) -> EquilibriumTable:
    rows = np.array([equilibrium_measure(lap, k).values for k in range(lap.n)])
    rows.setflags(write=False)
    return EquilibriumTable(lap.vertices, rows)


def resistance_via_equilibrium(nu: EquilibriumTable, i, t) -> float:
    """``r(i, t) = (nu^i_t + nu^t_i) / n``."""
    i, t = nu.index(i), nu.index(t)
    return float((nu.matrix[i, t] + nu.matrix[t, i]) / nu.n)


def voltage_via_equilibrium(nu: EquilibriumTable, i, s, t) -> float:
    """``j_i(s, t)`` from equilibrium measures alone.

    ``2 j_i(s, t) = (nu^i_s + nu^s_i + nu^i_t + nu^t_i - nu^s_t - nu^t_s) / n``
    """
    m = nu.matrix
    i, s, t = nu.index(i), nu.index(s), nu.index(t)
    return float((m[i, s] + m[s, i] + m[i, t] + m[t, i] - m[s, t] - m[t, s]) / (2 * nu.n))


def nodal_resistance(lap: DiscreteLaplacian, p, q) -> float:
    """Resistance by driving unit current from ``p`` to ``q`` with ``q`` grounded."""
    ip, iq = lap.index(p), lap.index(q)
    b = np.zeros(lap.n)
    b[ip] += 1.0
    b[iq] -= 1.0
    return float(solve_centered(lap, b, iq)[ip])
