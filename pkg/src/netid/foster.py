"""Certification of Foster-type identities for voltages and resistances.

Every check compares a left-hand side built from network quantities
(conductances, voltages, resistances, the pseudoinverse and walk
probabilities) with a closed-form right-hand side in ``n`` and the traces of
powers of the transition matrix.  For a source vertex ``s`` and ``k >= 1``:

* ``theorem_main``:   sum_{i,t} C_i j_i(s,t) p_it^(k) = n - k + sum_{m<k} tr(P^m)
* ``corollary_main``: 1/2 sum_{i,t} C_i r(i,t) p_it^(k) = same right-hand side
* ``recurrence``:     S(k+1) = 1 - tr(P^k) + S(k), with S(k) = sum C_i l+_it p_it^(k)
* ``trans2``:         S(k) = k - n - sum_{m<k} tr(P^m) + sum_i C_i l+_ii
* ``low_order_1..4``: the path-sum forms for walks of one to four edges

Fault injection: when ``lhs_network`` differs from ``network``, every
left-hand side is evaluated on the former and every right-hand side on the
latter.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np

from .errors import PreconditionError
from .graph import MetrizedGraph, conductance_profile, optimalize
from .markov import TransitionKernel, transition_matrix
from .network import ResistanceMatrix, resistance_matrix, voltage_table
from .spectral import DiscreteLaplacian, PseudoInverse, laplacian, pseudo_inverse

DEFAULT_TOL = 1e-8
CHECK_NAMES = (
    "theorem_main",
    "corollary_main",
    "recurrence",
    "trans2",
    "low_order_1",
    "low_order_2",
    "low_order_3",
    "low_order_4",
)


class ElectricalNetwork:
    """A graph together with its lazily computed matrices.

    The graph is optimalized on construction.
    """

    def __init__(self, graph: MetrizedGraph):
        self.graph = optimalize(graph)

    @property
    def vertices(self):
        return self.graph.vertices

    @property
    def n(self) -> int:
        return self.graph.n

    def index(self, vertex) -> int:
        return self.graph.index(vertex)

    @cached_property
    def profile(self):
        return conductance_profile(self.graph)

    @cached_property
    def laplacian(self) -> DiscreteLaplacian:
        return laplacian(self.graph)

    @cached_property
    def pinv(self) -> PseudoInverse:
        return pseudo_inverse(self.laplacian)

    @cached_property
    def resistance(self) -> ResistanceMatrix:
        return resistance_matrix(self.pinv)

    @cached_property
    def kernel(self) -> TransitionKernel:
        return transition_matrix(self.profile)

    @cached_property
    def square_sum(self) -> float:
        return conductance_square_sum(self)

    @cached_property
    def triangle_sum(self) -> float:
        return conductance_triangle_sum(self)

    def flow(self, k: int) -> np.ndarray:
        """``C_i p_it^(k)``, the symmetric k-step edge flow."""
        return self.kernel.conductances[:, None] * self.kernel.power(k)

    def trace_sum(self, k: int) -> float:
        """``sum_{m=1}^{k-1} tr(P^m)``; zero for ``k = 1``."""
        return float(self.kernel.traces(k - 1).sum()) if k > 1 else 0.0

    def foster_rhs(self, k: int) -> float:
        return self.n - k + self.trace_sum(k)


def as_network(g) -> ElectricalNetwork:
    return g if isinstance(g, ElectricalNetwork) else ElectricalNetwork(g)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    k: int
    s: str | None
    lhs: float
    rhs: float
    residual: float
    passed: bool

    @classmethod
    def compare(cls, name, k, s, lhs, rhs, tol):
        lhs, rhs = float(lhs), float(rhs)
        residual = abs(lhs - rhs)
        return cls(name, int(k), s, lhs, rhs, residual, bool(residual <= tol * max(1.0, abs(rhs))))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    @classmethod
    def from_dict(cls, d) -> "IdentityCheck":
        return cls(d["name"], d["k"], d["s"], d["lhs"], d["rhs"], d["residual"], d["pass"])


@dataclass(frozen=True)
class IdentityReport:
    n: int
    e: int
    tolerance: float
    checks: tuple[IdentityCheck, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "graph": {"n": self.n, "e": self.e},
            "tolerance": self.tolerance,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return _dump_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "IdentityReport":
        d = json.loads(text)
        checks = tuple(IdentityCheck.from_dict(c) for c in d["checks"])
        return cls(d["graph"]["n"], d["graph"]["e"], d["tolerance"], checks)


def _dump_json(obj) -> str:
    """JSON with floats at 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_dump_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump_json(v) for v in obj) + "]"
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return json.dumps(obj)
        text = f"{obj:.17g}"
        return text if any(c in text for c in ".en") else text + ".0"
    return json.dumps(obj)


def _check_k(k):
    if k < 1:
        raise PreconditionError(f"k must be at least 1, got {k}")


def theorem_main_check(g, s, k: int, tol: float = DEFAULT_TOL, lhs_network=None) -> IdentityCheck:
    """``sum_{i,t} C_i j_i(s,t) p_it^(k)`` against ``n - k + sum_{m<k} tr(P^m)``."""
    _check_k(k)
    net = as_network(g)
    lnet = as_network(lhs_network) if lhs_network is not None else net
    lhs = np.sum(lnet.flow(k) * voltage_table(lnet.pinv, s))
    return IdentityCheck.compare("theorem_main", k, net.vertices[net.index(s)], lhs, net.foster_rhs(k), tol)


def extended_foster_check(g, k: int, tol: float = DEFAULT_TOL, lhs_network=None) -> IdentityCheck:
    """``1/2 sum_{i,t} C_i r(i,t) p_it^(k)`` against the same right-hand side.

    At ``k = 1`` this is Foster's first identity: the sum over edges of
    ``r(edge) / length`` equals ``n - 1``.
    """
    _check_k(k)
    net = as_network(g)
    lnet = as_network(lhs_network) if lhs_network is not None else net
    lhs = 0.5 * np.sum(lnet.flow(k) * lnet.resistance.matrix)
    return IdentityCheck.compare("corollary_main", k, None, lhs, net.foster_rhs(k), tol)


def _pinv_flow_sum(net: ElectricalNetwork, k: int) -> float:
    return float(np.sum(net.flow(k) * net.pinv.matrix))


def recurrence_check(g, k: int, tol: float = DEFAULT_TOL, lhs_network=None) -> IdentityCheck:
    """One-step recurrence ``S(k+1) = 1 - tr(P^k) + S(k)``."""
    _check_k(k)
    net = as_network(g)
    lnet = as_network(lhs_network) if lhs_network is not None else net
    lhs = _pinv_flow_sum(lnet, k + 1)
    rhs = 1.0 - np.trace(net.kernel.power(k)) + _pinv_flow_sum(net, k)
    return IdentityCheck.compare("recurrence", k, None, lhs, rhs, tol)


def trans2_check(g, k: int, tol: float = DEFAULT_TOL, lhs_network=None) -> IdentityCheck:
    """Closed form ``S(k) = k - n - sum_{m<k} tr(P^m) + sum_i C_i l+_ii``."""
    _check_k(k)
    net = as_network(g)
    lnet = as_network(lhs_network) if lhs_network is not None else net
    lhs = _pinv_flow_sum(lnet, k)
    rhs = k - net.n - net.trace_sum(k) + float(net.kernel.conductances @ np.diag(net.pinv.matrix))
    return IdentityCheck.compare("trans2", k, None, lhs, rhs, tol)


def _path_weights(net: ElectricalNetwork, order: int) -> np.ndarray:
    """Sum over vertex paths of ``order`` edges of ``C_{w p1} C_{p1 p2} ... / (C_p1 ...)``.

    Entry ``[w, t]`` collects paths from ``w`` to ``t``; built from
    conductances directly rather than from powers of ``P``.
    """
    C = net.profile.pairwise
    inner = C / net.profile.vertex[:, None]
    weights = C
    for _ in range(order - 1):
        weights = weights @ inner
    return weights


def conductance_square_sum(g) -> float:
    """``sum over ordered adjacent pairs of C_pq^2 / (C_p C_q)``, enumerated edge by edge."""
    net = as_network(g)
    C, Cv = net.profile.pairwise, net.profile.vertex
    total = 0.0
    for p, neighbours in enumerate(net.profile.adjacency()):
        for q in neighbours:
            total += C[p, q] ** 2 / (Cv[p] * Cv[q])
    return total


def conductance_triangle_sum(g) -> float:
    """``sum over ordered triangles p~q~w~p of C_pw C_wq C_qp / (C_p C_w C_q)``."""
    net = as_network(g)
    C, Cv = net.profile.pairwise, net.profile.vertex
    adjacency = net.profile.adjacency()
    total = 0.0
    for p, neighbours in enumerate(adjacency):
        for q in neighbours:
            for w in neighbours & adjacency[q]:
                total += C[p, w] * C[w, q] * C[q, p] / (Cv[p] * Cv[w] * Cv[q])
    return total


def low_order_rhs(g, order: int) -> float:
    net = as_network(g)
    rhs = (net.n - order) / 2
    if order >= 3:
        rhs += 0.5 * net.square_sum
    if order == 4:
        rhs += 0.5 * net.triangle_sum
    return rhs


def _check_order(order):
    if order not in (1, 2, 3, 4):
        raise PreconditionError(f"order must be 1, 2, 3 or 4, got {order!r}")


def low_order_identity(g, s, order: int, tol: float = DEFAULT_TOL, lhs_network=None) -> IdentityCheck:
    """Voltage path sum over walks of ``order`` edges, symmetrized.

    The left-hand side sums the path summand over every ordered vertex tuple
    and halves the result, which removes any dependence on vertex order.
    """
    _check_order(order)
    net = as_network(g)
    lnet = as_network(lhs_network) if lhs_network is not None else net
    lhs = 0.5 * np.sum(_path_weights(lnet, order) * voltage_table(lnet.pinv, s))
    return IdentityCheck.compare(f"low_order_{order}", order, net.vertices[net.index(s)], lhs, low_order_rhs(net, order), tol)


def low_order_literal(g, s, order: int) -> float:
    """Diagnostic: the path sum restricted to endpoint pairs ``w < t`` in vertex order.

    Its value depends on the vertex order, so it is reported, never asserted.
    """
    _check_order(order)
    net = as_network(g)
    upper = np.triu(np.ones((net.n, net.n), dtype=bool), 1)
    return float(np.sum((_path_weights(net, order) * voltage_table(net.pinv, s))[upper]))


def full_report(g, s="all", kmax: int = 10, tol: float = DEFAULT_TOL, lhs_graph=None) -> IdentityReport:
    """Run every check and collect the results.

    Parameters
    ----------
    g : MetrizedGraph or ElectricalNetwork
    s : vertex id, iterable of ids, or ``"all"``
        Current sources used by the voltage identities.
    kmax : int
        Largest walk length for the k-indexed identities.
    tol : float
        A check passes when ``|lhs - rhs| <= tol * max(1, |rhs|)``.
    lhs_graph : MetrizedGraph, optional
        Fault injection: evaluate left-hand sides on this graph instead.
    """
    if kmax < 1:
        raise PreconditionError("kmax must be at least 1")
    net = as_network(g)
    lnet = None
    if lhs_graph is not None:
        lnet = as_network(lhs_graph)
        if lnet.vertices != net.vertices:
            raise PreconditionError("fault-injection graph must have the same vertices")
    if isinstance(s, str) and s == "all":
        sources = list(net.vertices)
    elif isinstance(s, str):
        sources = [s]
    else:
        sources = list(s)
    sources = [net.vertices[net.index(v)] for v in sources]
    ks = range(1, kmax + 1)

    checks = []
    checks += [theorem_main_check(net, v, k, tol, lnet) for v in sources for k in ks]
    checks += [extended_foster_check(net, k, tol, lnet) for k in ks]
    checks += [recurrence_check(net, k, tol, lnet) for k in ks]
    checks += [trans2_check(net, k, tol, lnet) for k in ks]
    checks += [low_order_identity(net, v, order, tol, lnet) for order in (1, 2, 3, 4) for v in sources]
    return IdentityReport(net.n, net.graph.e, tol, tuple(checks))
