"""Discrete Laplacian, its Moore-Penrose pseudoinverse and pinned solves.

Everything is dense.  The pseudoinverse uses the rank completion

    L+ = (L + J/n)^-1 - J/n

which is exact for a symmetric, doubly centered matrix of rank n-1: adding
J/n lifts the zero eigenvalue on the all-ones vector to 1 and leaves the
other eigenpairs alone.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InconsistentSystemError, NumericalError
from .graph import MetrizedGraph, conductance_profile, vertex_index

CONDITION_WARNING = 1e12
RESIDUAL_TOL = 1e-9


class IllConditionedWarning(UserWarning):
    pass


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DiscreteLaplacian:
    """The weighted Laplacian ``L = D - A`` in graph vertex order."""

    vertices: tuple[str, ...]
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex) -> int:
        return vertex_index(self.vertices, vertex)


@dataclass(frozen=True)
class PseudoInverse:
    """Moore-Penrose inverse ``L+`` of a discrete Laplacian."""

    vertices: tuple[str, ...]
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex) -> int:
        return vertex_index(self.vertices, vertex)


def laplacian(g: MetrizedGraph) -> DiscreteLaplacian:
    """Laplacian of an optimal graph.

    Off-diagonal entries are ``-1/L`` for an edge of length ``L`` and zero
    otherwise; each diagonal entry is minus the sum of its row.
    """
    conductances = conductance_profile(g)
    # 0 - x instead of -x: no negative zeros in dumps
    lap = 0.0 - conductances.pairwise
    lap[np.diag_indices_from(lap)] = conductances.vertex
    return DiscreteLaplacian(g.vertices, _frozen(lap))


def pseudo_inverse(lap: DiscreteLaplacian) -> PseudoInverse:
    """Moore-Penrose pseudoinverse via one Cholesky factorization.

    Emits :class:`IllConditionedWarning` when the 1-norm condition number of
    ``L + J/n`` exceeds 1e12.

    Raises
    ------
    NumericalError
        If ``L + J/n`` is not numerically positive definite.
    """
    n = lap.n
    shifted = lap.matrix + 1.0 / n
    try:
        factor = scipy.linalg.cho_factor(shifted, lower=True, check_finite=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"L + J/n is not positive definite: {exc}", np.linalg.cond(shifted)) from None
    inverse = scipy.linalg.cho_solve(factor, np.eye(n))
    condition = np.linalg.norm(shifted, 1) * np.linalg.norm(inverse, 1)
    if condition > CONDITION_WARNING:
        warnings.warn(f"L + J/n has condition number {condition:.3e}", IllConditionedWarning, stacklevel=2)
    pinv = 0.5 * (inverse + inverse.T) - 1.0 / n
    return PseudoInverse(lap.vertices, _frozen(pinv))


def penrose_residuals(lap: DiscreteLaplacian, pinv: PseudoInverse) -> dict[str, float]:
    """Max-entry residuals of the four Penrose equations and ``LL+ = I - J/n``."""
    L, H = lap.matrix, pinv.matrix
    LH, HL = L @ H, H @ L
    n = lap.n
    centering = np.eye(n) - 1.0 / n

    def worst(m):
        return float(np.max(np.abs(m)))

    return {
        "LHL=L": worst(LH @ L - L),
        "HLH=H": worst(HL @ H - H),
        "LH symmetric": worst(LH - LH.T),
        "HL symmetric": worst(HL - HL.T),
        "LH=I-J/n": worst(LH - centering),
        "HL=I-J/n": worst(HL - centering),
    }


def solve_centered(lap: DiscreteLaplacian, b, pin, tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Solve ``L u = b`` for the unique ``u`` with ``u[pin] = 0``.

    The system is singular, so ``b`` must sum to zero; the pinned row and
    column are dropped and the remaining positive definite block is solved.

    Raises
    ------
    InconsistentSystemError
        If ``|sum(b)| > tol * ||b||_1``.
    """
    b = np.asarray(b, dtype=float)
    if b.shape != (lap.n,):
        raise ValueError(f"right-hand side has shape {b.shape}, expected ({lap.n},)")
    total = abs(b.sum())
    if total > tol * np.abs(b).sum():
        raise InconsistentSystemError(f"right-hand side sums to {b.sum():.3e}, not 0")
    k = lap.index(pin)
    keep = np.arange(lap.n) != k
    u = np.zeros(lap.n)
    if keep.any():
        block = lap.matrix[np.ix_(keep, keep)]
        try:
            u[keep] = scipy.linalg.solve(block, b[keep], assume_a="pos")
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"grounded Laplacian solve failed: {exc}", np.linalg.cond(block)) from None
    return u


def format_tsv(matrix) -> str:
    """Row-major TSV, 17 significant digits, one row per line."""
    matrix = np.atleast_2d(matrix)
    return "".join("\t".join(f"{x:.17g}" for x in row) + "\n" for row in matrix)
