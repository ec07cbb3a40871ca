"""Resistive electrical networks on weighted graphs.

Laplacian and pseudoinverse, resistance and voltage functions, equilibrium
measures, the associated random walk, and certification of Foster-type
identities.
"""

from .errors import (
    ConnectivityError,
    EdgeLengthError,
    GraphParseError,
    InconsistentSystemError,
    NetidError,
    NumericalError,
    PreconditionError,
)
from .foster import (
    ElectricalNetwork,
    IdentityCheck,
    IdentityReport,
    extended_foster_check,
    full_report,
    low_order_identity,
    low_order_literal,
    recurrence_check,
    theorem_main_check,
    trans2_check,
)
from .generate import generate_random_graph, generate_random_multigraph
from .graph import (
    ConductanceProfile,
    Edge,
    MetrizedGraph,
    conductance_profile,
    optimalize,
    parse_edge_list,
    serialize,
)
from .markov import TransitionKernel, kstep, simulate_kstep_frequencies, trace_sequence, transition_matrix
from .network import (
    equilibrium_measure,
    equilibrium_table,
    resistance_matrix,
    resistance_via_equilibrium,
    voltage,
    voltage_from_resistance,
    voltage_via_equilibrium,
    y_reduction,
)
from .spectral import DiscreteLaplacian, PseudoInverse, laplacian, pseudo_inverse, solve_centered

__version__ = "0.1.0"
